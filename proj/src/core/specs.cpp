#include "core/specs.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace hlab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) throw std::invalid_argument(what + ": empty number");
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw std::invalid_argument(what + ": bad number '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty()) throw std::invalid_argument(what + ": empty integer");
  char* end = nullptr;
  unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw std::invalid_argument(what + ": bad integer '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

WeightSequence parse_weight_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);

  if (head == "constant") {
    if (!rest.empty())
      throw std::invalid_argument("weight spec 'constant' takes no argument");
    return WeightSequence::constant();
  }
  if (head == "sobolev") {
    if (!rest.empty())
      throw std::invalid_argument("weight spec 'sobolev' takes no argument");
    return WeightSequence::sobolev();
  }
  if (head == "logrecip") {
    if (!rest.empty())
      throw std::invalid_argument("weight spec 'logrecip' takes no argument");
    return WeightSequence::log_reciprocal();
  }
  if (head == "powerlog") {
    if (!rest.empty())
      throw std::invalid_argument("weight spec 'powerlog' takes no argument");
    return WeightSequence::power_log();
  }
  if (head == "bergman")
    return WeightSequence::bergman(parse_double(rest, "bergman alpha"));
  if (head == "dirichlet")
    return WeightSequence::dirichlet(parse_double(rest, "dirichlet lambda"));
  if (head == "flipbergman") {
    auto parts = split(rest, ':');
    if (parts.size() != 2)
      throw std::invalid_argument(
          "weight spec 'flipbergman' needs alpha:seed, got '" + spec + "'");
    return WeightSequence::random_flip_bergman(
        parse_double(parts[0], "flipbergman alpha"),
        parse_u64(parts[1], "flipbergman seed"));
  }
  if (head == "file") {
    if (rest.empty())
      throw std::invalid_argument("weight spec 'file' needs a path");
    return WeightSequence::from_file(rest);
  }
  throw std::invalid_argument("unknown weight spec '" + spec + "'");
}

SymbolSpec parse_symbol_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("symbol spec needs kind:args, got '" + spec +
                                "'");
  const std::string head = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);

  SymbolSpec out;
  out.text = spec;
  if (head == "poly") {
    out.kind = SymbolSpec::Kind::Poly;
    for (const auto& tok : split(rest, ','))
      out.poly.push_back(parse_double(tok, "poly coefficient"));
    if (out.poly.empty())
      throw std::invalid_argument("poly symbol needs at least one coefficient");
    return out;
  }
  if (head == "mobius") {
    auto parts = split(rest, ',');
    if (parts.size() != 2 && parts.size() != 3)
      throw std::invalid_argument("mobius symbol needs re,im[,theta]");
    const double re = parse_double(parts[0], "mobius re");
    const double im = parse_double(parts[1], "mobius im");
    const double th =
        parts.size() == 3 ? parse_double(parts[2], "mobius theta") : 0.0;
    out.kind = SymbolSpec::Kind::Mobius;
    out.mobius = MobiusMap(cplx(re, im), th);
    return out;
  }
  if (head == "blaschke") {
    out.kind = SymbolSpec::Kind::Blaschke;
    std::vector<cplx> zeros;
    double theta = 0.0;
    auto groups = split(rest, ';');
    for (const auto& g : groups) {
      auto parts = split(g, ',');
      if (parts.size() == 1 && &g == &groups.back() && groups.size() > 1) {
        theta = parse_double(parts[0], "blaschke theta");
        continue;
      }
      if (parts.size() == 3 && &g == &groups.back()) {
        zeros.emplace_back(parse_double(parts[0], "blaschke re"),
                           parse_double(parts[1], "blaschke im"));
        theta = parse_double(parts[2], "blaschke theta");
        continue;
      }
      if (parts.size() != 2)
        throw std::invalid_argument("blaschke symbol: each zero is re,im");
      zeros.emplace_back(parse_double(parts[0], "blaschke re"),
                         parse_double(parts[1], "blaschke im"));
    }
    out.blaschke = BlaschkeProduct(std::move(zeros), theta);
    return out;
  }
  throw std::invalid_argument("unknown symbol kind '" + head + "'");
}

PowerSeries symbol_series(const SymbolSpec& sym, int N) {
  if (N <= 0) throw std::invalid_argument("symbol_series: N must be positive");
  switch (sym.kind) {
    case SymbolSpec::Kind::Poly: {
      PowerSeries f(static_cast<std::size_t>(N), cplx(0.0, 0.0));
      if (static_cast<int>(sym.poly.size()) > N)
        throw std::invalid_argument(
            "symbol_series: polynomial degree exceeds truncation order");
      for (std::size_t k = 0; k < sym.poly.size(); ++k)
        f[k] = cplx(sym.poly[k], 0.0);
      return f;
    }
    case SymbolSpec::Kind::Mobius:
      return mobius_series(*sym.mobius, N);
    case SymbolSpec::Kind::Blaschke:
      return blaschke_series(*sym.blaschke, N);
  }
  throw std::logic_error("symbol_series: unreachable");
}

}  // namespace hlab
