// String specs used by the CLI/config surface:
//   weights: bergman:a, dirichlet:l, sobolev, logrecip, powerlog,
//            flipbergman:a:seed, constant, file:PATH
//   symbols: poly:c0,c1,..., mobius:re,im[,theta],
//            blaschke:re1,im1;re2,im2[,theta]
#pragma once

#include <optional>
#include <string>

#include "core/series.hpp"

namespace hlab {

WeightSequence parse_weight_spec(const std::string& spec);

struct SymbolSpec {
  enum class Kind { Poly, Mobius, Blaschke };
  Kind kind;
  std::vector<double> poly;  // raw real coefficients (Poly only)
  std::optional<MobiusMap> mobius;
  std::optional<BlaschkeProduct> blaschke;
  std::string text;  // the original spec string
};

SymbolSpec parse_symbol_spec(const std::string& spec);

// The symbol as a power series of order N (polynomials are zero-padded).
PowerSeries symbol_series(const SymbolSpec& sym, int N);

}  // namespace hlab
