// Quantitative verdicts at finite truncation: singular-value bounds and the
// Riesz-base ladder tests, growth-ratio traces, the derivative-power and
// Bergman lower-bound checks, boundedness transfer, and Fredholm indices.
// Verdicts are evidence at finite truncation, never certificates.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/operators.hpp"

namespace hlab {

struct SingularBounds {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  int rows = 0;
  int cols = 0;
};

// Extreme singular values of the top-left rows x cols block (rows >= cols).
// Tall blocks are the point: sigma_min is nondecreasing in rows, so row
// truncation can only understate the lower bound, never inflate it.
SingularBounds singular_bounds(const Matrix& X, int rows, int cols);

// The ladder estimator pair for an N x N conjugated operator matrix C:
// sigma_min from the tall (N, ceil(0.8 N / spread)) block, whose retained
// columns are full images; sigma_max from the full square compression, the
// largest available block (truncation understates both, never inflates).
// Reported rows/cols are the tall block's shape.
SingularBounds ladder_bounds(const Matrix& C, int N, double spread);

enum class RieszClass { RieszEvidence, NotLowerBounded, NotBounded, Inconclusive };
const char* riesz_class_name(RieszClass c);
RieszClass riesz_class_from_name(const std::string& name);

struct RieszRung {
  int N;
  SingularBounds bounds;
};

struct RieszReport {
  std::vector<RieszRung> rungs;
  RieszClass verdict = RieszClass::Inconclusive;
  double tol = 0.0;       // sigma_min floor
  double plateau = 0.05;  // max relative drift counted as a plateau
  double collapse = 0.25; // min relative change per rung counted as collapse/blowup
  std::string family;
  std::string weight;
};

// A family generator: build(N) returns N members of order N. The ladder needs
// the family re-assembled at every rung, so families travel as builders.
//
// `spread` declares how far member j's coefficient mass reaches: up to row
// ~ spread * j. Monomials have spread 1; Moebius powers phi_t^n concentrate in
// rows [n(1-t)/(1+t), n(1+t)/(1-t)], so spread = (1+t)/(1-t). The ladder keeps
// cols = ceil(0.8 N / spread) so every retained column is a full image and
// row truncation only sheds exponentially small tails.
struct FamilyBuilder {
  std::string label;
  std::function<std::vector<PowerSeries>(int)> build;
  double spread = 1.0;
};

FamilyBuilder monomial_family();
FamilyBuilder mobius_power_family(const MobiusMap& map);
// Interleaved {B^n/(1 - conj(z_j) z)}, index i = n*m + (j-1) (n-major).
FamilyBuilder blaschke_kernel_family(const BlaschkeProduct& b);
// Reproducible pseudo-random family with geometric column decay (tests/CLI).
FamilyBuilder random_family(std::uint64_t seed);

// Builds D_beta X_F D_beta^-1 at every rung; records rectangular bounds
// (rows = N, cols = ceil(0.8 N)) and applies the ladder verdict rules.
RieszReport riesz_verdict(const FamilyBuilder& family, const WeightSequence& seq,
                          const std::vector<int>& ladder, double tol,
                          double plateau = 0.05, double collapse = 0.25);

// riesz_verdict on the interleaved Blaschke kernel family; zeros must be
// pairwise distinct (distance > 1e-6).
RieszReport riesz_blaschke_family(const BlaschkeProduct& b, const WeightSequence& seq,
                                  const std::vector<int>& ladder, double tol,
                                  double plateau = 0.05, double collapse = 0.25);

struct GrowthTrace {
  std::vector<long> n;
  std::vector<double> log_r;  // log r_n; r_0 = 1 exactly
  std::string symbol;
  std::string weight;
  int N = 0;
};

// r_n = ||phi^n||_beta / beta_n in the log domain; requires N >= 4 max(n).
GrowthTrace growth_trace(const MobiusMap& map, const WeightSequence& seq,
                         const std::vector<long>& n_list, int N);

struct DnLowerReport {
  double t = 0.0, alpha = 0.0;
  double norm = 0.0, bound = 0.0;
  bool pass = false;
  int N = 0;
};
// ||(phi_t')^alpha||_{H^2} >= (1+t)^alpha / ((1-t)^{alpha-1} sqrt(2 pi (2 alpha - 1))).
// alpha must exceed 1/2 strictly (the bound degenerates at 1/2).
DnLowerReport dnlower_check(double t, double alpha, int N);

struct BLowerReport {
  double t = 0.0, alpha = 0.0;
  long n = 0;
  int N = 0;
  double lhs = 0.0, rhs = 0.0;
  bool pass = false;
};
// lhs = ||phi_t^n||_{A_alpha} / beta_n^{(alpha)}, rhs = 0.5 ||(phi_t')^alpha||_{H^2}.
BLowerReport blower_check(double t, double alpha, long n, int N);

struct CowenReport {
  double sigma_a = 0.0, sigma_b = 0.0;
  bool pass = false;
  int N = 0;
  std::string weight_a, weight_b;
};
// Requires w_k(a) >= w_k(b) for k <= N and psi(0) = 0; asserts the sigma_max
// estimate on the dominating space is >= the dominated one minus 1e-8.
CowenReport cowen_transfer_check(const PowerSeries& psi, const WeightSequence& a,
                                 const WeightSequence& b, int N);

struct IndexReport {
  long index = 0;    // Fredholm index of M_{f - lambda} = -winding
  long winding = 0;
  int grid = 0;      // final grid size after refinement
  double residual = 0.0;
};
// Argument principle on the M-point circle grid with grid doubling until all
// phase increments are < pi/2 (capped at 2^20).
IndexReport fredholm_index(const PowerSeries& f, cplx lambda, int grid);

}  // namespace hlab
