#include "core/diagnostics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hlab {

SingularBounds singular_bounds(const Matrix& X, int rows, int cols) {
  if (rows < cols) throw std::invalid_argument("singular_bounds: rows must be >= cols");
  if (rows > X.rows() || cols > X.cols())
    throw std::invalid_argument("singular_bounds: block exceeds matrix dimensions");
  Eigen::BDCSVD<Matrix> svd(X.topLeftCorner(rows, cols));
  const auto& sv = svd.singularValues();
  SingularBounds sb;
  sb.sigma_max = sv(0);
  sb.sigma_min = sv(sv.size() - 1);
  sb.rows = rows;
  sb.cols = cols;
  return sb;
}

const char* riesz_class_name(RieszClass c) {
  switch (c) {
    case RieszClass::RieszEvidence: return "RieszEvidence";
    case RieszClass::NotLowerBounded: return "NotLowerBounded";
    case RieszClass::NotBounded: return "NotBounded";
    case RieszClass::Inconclusive: return "Inconclusive";
  }
  return "?";
}

RieszClass riesz_class_from_name(const std::string& name) {
  if (name == "RieszEvidence" || name == "riesz") return RieszClass::RieszEvidence;
  if (name == "NotLowerBounded" || name == "not-lower-bounded") return RieszClass::NotLowerBounded;
  if (name == "NotBounded" || name == "not-bounded") return RieszClass::NotBounded;
  if (name == "Inconclusive" || name == "inconclusive") return RieszClass::Inconclusive;
  throw std::invalid_argument("unknown riesz verdict name: " + name);
}

FamilyBuilder monomial_family() {
  return {"monomials", [](int N) {
            std::vector<PowerSeries> F;
            F.reserve(size_t(N));
            for (int n = 0; n < N; ++n) F.push_back(monomial(n, N));
            return F;
          }};
}

FamilyBuilder mobius_power_family(const MobiusMap& map) {
  const double t = std::abs(map.z0);
  return {"mobius-powers", [map](int N) {
            std::vector<PowerSeries> F;
            F.reserve(size_t(N));
            PowerSeries p(size_t(N), cplx(0.0));
            p[0] = 1.0;
            const PowerSeries phi = mobius_series(map, N);
            F.push_back(p);
            for (int n = 1; n < N; ++n) {
              p = mul(p, phi);
              F.push_back(p);
            }
            return F;
          },
          (1.0 + t) / (1.0 - t)};
}

FamilyBuilder blaschke_kernel_family(const BlaschkeProduct& b) {
  const double zeta = b.max_zero_modulus();
  return {"blaschke-kernels", [b](int N) {
            const int m = b.order();
            std::vector<PowerSeries> kernels;
            for (const cplx& z : b.zeros) {
              PowerSeries den(size_t(N), cplx(0.0));
              den[0] = 1.0;
              if (N > 1) den[1] = -std::conj(z);
              kernels.push_back(reciprocal(den));
            }
            const PowerSeries B = blaschke_series(b, N);
            std::vector<PowerSeries> F;
            F.reserve(size_t(N));
            PowerSeries Bn(size_t(N), cplx(0.0));
            Bn[0] = 1.0;
            for (int i = 0; i < N; ++i) {
              const int r = i % m;
              if (i > 0 && r == 0) Bn = mul(Bn, B);
              F.push_back(mul(Bn, kernels[size_t(r)]));
            }
            return F;
          },
          (1.0 + zeta) / (1.0 - zeta)};
}

FamilyBuilder random_family(std::uint64_t seed) {
  return {"random:" + std::to_string(seed), [seed](int N) {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::uniform_real_distribution<double> unif(0.3, 0.9);
            std::vector<PowerSeries> F;
            F.reserve(size_t(N));
            for (int j = 0; j < N; ++j) {
              const double rho = unif(rng);
              PowerSeries f(static_cast<size_t>(N));
              double scale = 1.0;
              for (int k = 0; k < N; ++k) {
                f[size_t(k)] = scale * cplx(gauss(rng), gauss(rng));
                scale *= rho;
              }
              F.push_back(std::move(f));
            }
            return F;
          }};
}

namespace {
// Column budget for the tall (rows = N) ladder blocks: 0.8 N for spread-1
// families, shrunk by the family's declared mass spread so that every kept
// column is a full image (its coefficient mass fits inside the N rows).
int riesz_cols(int N, double spread = 1.0) {
  const int cols = int(std::ceil(0.8 * double(N) / std::max(spread, 1.0)));
  return std::max(1, std::min(cols, N));
}
}

SingularBounds ladder_bounds(const Matrix& C, int N, double spread) {
  const int cols = riesz_cols(N, spread);
  SingularBounds tall = singular_bounds(C, N, cols);
  if (cols < N) tall.sigma_max = singular_bounds(C, N, N).sigma_max;
  return tall;
}

RieszReport riesz_verdict(const FamilyBuilder& family, const WeightSequence& seq,
                          const std::vector<int>& ladder, double tol,
                          double plateau, double collapse) {
  if (ladder.size() < 2) throw std::invalid_argument("riesz_verdict: ladder needs >= 2 rungs");
  for (size_t i = 0; i + 1 < ladder.size(); ++i)
    if (ladder[i + 1] <= ladder[i])
      throw std::invalid_argument("riesz_verdict: ladder must be strictly increasing");

  RieszReport rep;
  rep.tol = tol;
  rep.plateau = plateau;
  rep.collapse = collapse;
  rep.family = family.label;
  rep.weight = seq.label();
  for (int N : ladder) {
    const Matrix X = transformation_matrix(family.build(N), N);
    const Matrix C = scale_conjugate(X, seq, ScaleDirection::Beta);
    rep.rungs.push_back({N, ladder_bounds(C, N, family.spread)});
  }

  const size_t L = rep.rungs.size() - 1;
  const double smax_prev = rep.rungs[L - 1].bounds.sigma_max;
  const double smin_prev = rep.rungs[L - 1].bounds.sigma_min;
  const double smax_last = rep.rungs[L].bounds.sigma_max;
  const double smin_last = rep.rungs[L].bounds.sigma_min;

  bool min_collapses = true, max_blows = true;
  for (size_t i = 0; i + 1 < rep.rungs.size(); ++i) {
    const auto& a = rep.rungs[i].bounds;
    const auto& b = rep.rungs[i + 1].bounds;
    if (!(b.sigma_min <= (1.0 - collapse) * a.sigma_min)) min_collapses = false;
    if (!(b.sigma_max >= (1.0 + collapse) * a.sigma_max)) max_blows = false;
  }

  if (smax_last < (1.0 + plateau) * smax_prev && smin_last > (1.0 - plateau) * smin_prev &&
      smin_last > tol)
    rep.verdict = RieszClass::RieszEvidence;
  else if (smin_last < tol && min_collapses)
    rep.verdict = RieszClass::NotLowerBounded;
  else if (max_blows)
    rep.verdict = RieszClass::NotBounded;
  else
    rep.verdict = RieszClass::Inconclusive;
  return rep;
}

RieszReport riesz_blaschke_family(const BlaschkeProduct& b, const WeightSequence& seq,
                                  const std::vector<int>& ladder, double tol,
                                  double plateau, double collapse) {
  if (!b.zeros_distinct(1e-6))
    throw std::invalid_argument(
        "riesz_blaschke_family: zeros must be pairwise distinct (distance > 1e-6); "
        "repeated zeros are only covered by the general total-sequence statement");
  return riesz_verdict(blaschke_kernel_family(b), seq, ladder, tol, plateau, collapse);
}

GrowthTrace growth_trace(const MobiusMap& map, const WeightSequence& seq,
                         const std::vector<long>& n_list, int N) {
  long nmax = 0;
  for (long n : n_list) {
    if (n < 0) throw std::invalid_argument("growth_trace: n must be >= 0");
    nmax = std::max(nmax, n);
  }
  if (long(N) < 4 * nmax)
    throw std::invalid_argument("growth_trace: N must be >= 4*max(n) (series decay margin)");

  GrowthTrace tr;
  tr.symbol = "mobius";
  tr.weight = seq.label();
  tr.N = N;
  // walk the powers once, in ascending order of requested n
  std::vector<long> sorted(n_list.begin(), n_list.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> log_r_at(size_t(nmax) + 1, 0.0);
  const PowerSeries phi = mobius_series(map, N);
  PowerSeries p(size_t(N), cplx(0.0));
  p[0] = 1.0;
  size_t next = 0;
  for (long n = 0; n <= nmax && next < sorted.size(); ++n) {
    if (n > 0) p = mul(p, phi);
    if (sorted[next] == n) {
      log_r_at[size_t(n)] =
          n == 0 ? 0.0 : weighted_log_norm(p, seq) - seq.log_beta(n);  // r_0 = 1 exactly
      ++next;
    }
  }
  for (long n : n_list) {
    tr.n.push_back(n);
    tr.log_r.push_back(log_r_at[size_t(n)]);
  }
  return tr;
}

DnLowerReport dnlower_check(double t, double alpha, int N) {
  if (!(alpha > 0.5))
    throw std::invalid_argument(
        "dnlower_check: alpha must be > 1/2 strictly (the displayed bound degenerates at 1/2)");
  DnLowerReport rep;
  rep.t = t;
  rep.alpha = alpha;
  rep.N = N;
  const PowerSeries d = power_derivative_alpha(t, alpha, N);
  double acc = 0.0;
  for (const cplx& c : d) acc += std::norm(c);
  rep.norm = std::sqrt(acc);
  rep.bound = std::pow(1.0 + t, alpha) /
              (std::pow(1.0 - t, alpha - 1.0) * std::sqrt(2.0 * std::numbers::pi * (2.0 * alpha - 1.0)));
  rep.pass = rep.norm >= rep.bound;
  return rep;
}

BLowerReport blower_check(double t, double alpha, long n, int N) {
  if (long(N) < 4 * n)
    throw std::invalid_argument("blower_check: N must be >= 4*n (series decay margin)");
  BLowerReport rep;
  rep.t = t;
  rep.alpha = alpha;
  rep.n = n;
  rep.N = N;
  const WeightSequence berg = WeightSequence::bergman(alpha);
  const PowerSeries phi = mobius_series(MobiusMap(cplx(t, 0.0)), N);
  PowerSeries p(size_t(N), cplx(0.0));
  p[0] = 1.0;
  for (long k = 0; k < n; ++k) p = mul(p, phi);
  rep.lhs = std::exp(weighted_log_norm(p, berg) - berg.log_beta(n));
  const PowerSeries d = power_derivative_alpha(t, alpha, N);
  double acc = 0.0;
  for (const cplx& c : d) acc += std::norm(c);
  rep.rhs = 0.5 * std::sqrt(acc);
  rep.pass = rep.lhs >= rep.rhs;
  return rep;
}

CowenReport cowen_transfer_check(const PowerSeries& psi, const WeightSequence& a,
                                 const WeightSequence& b, int N) {
  if (int(psi.size()) < N) throw std::invalid_argument("cowen_transfer_check: psi order below N");
  if (std::abs(psi[0]) > 1e-13)
    throw std::domain_error("cowen_transfer_check: psi(0) must be 0");
  for (long k = 1; k <= N; ++k)
    if (a.w(k) < b.w(k) - 1e-12)
      throw std::domain_error("cowen_transfer_check: weight domination w_k(a) >= w_k(b) fails at k=" +
                              std::to_string(k));

  PowerSeries psi0 = truncate(psi, N);
  psi0[0] = 0.0;
  std::vector<PowerSeries> F;
  F.reserve(size_t(N));
  PowerSeries p(size_t(N), cplx(0.0));
  p[0] = 1.0;
  F.push_back(p);
  for (int n = 1; n < N; ++n) {
    p = mul(p, psi0);
    F.push_back(p);
  }
  const Matrix X = transformation_matrix(F, N);
  const int cols = riesz_cols(N);
  CowenReport rep;
  rep.N = N;
  rep.weight_a = a.label();
  rep.weight_b = b.label();
  rep.sigma_a = singular_bounds(scale_conjugate(X, a, ScaleDirection::Beta), N, cols).sigma_max;
  rep.sigma_b = singular_bounds(scale_conjugate(X, b, ScaleDirection::Beta), N, cols).sigma_max;
  rep.pass = rep.sigma_a >= rep.sigma_b - 1e-8;
  return rep;
}

IndexReport fredholm_index(const PowerSeries& f, cplx lambda, int grid) {
  constexpr int kGridCap = 1 << 20;
  if (grid < int(4 * f.size()) || (grid & (grid - 1)) != 0)
    throw std::invalid_argument("fredholm_index: grid must be a power of two >= 4*order");
  for (int M = grid; M <= kGridCap; M *= 2) {
    const std::vector<cplx> vals = eval_circle(truncate(f, M), M);
    double total = 0.0;
    bool too_coarse = false;
    cplx prev = vals[size_t(M - 1)] - lambda;
    if (std::abs(prev) <= 1e-6)
      throw std::domain_error("fredholm_index: f - lambda vanishes near the boundary circle");
    // walk the grid once, accumulating principal-branch phase increments
    for (int j = 0; j < M; ++j) {
      const cplx cur = vals[size_t(j)] - lambda;
      if (std::abs(cur) <= 1e-6)
        throw std::domain_error("fredholm_index: f - lambda vanishes near the boundary circle");
      const double inc = std::arg(cur / prev);
      if (std::abs(inc) >= std::numbers::pi / 2.0) {
        too_coarse = true;
        break;
      }
      total += inc;
      prev = cur;
    }
    if (too_coarse) continue;  // refine
    const double turns = total / (2.0 * std::numbers::pi);
    const long wind = std::lround(turns);
    const double residual = std::abs(turns - double(wind));
    if (residual >= 1e-3)
      throw std::runtime_error("fredholm_index: winding total failed to round to an integer");
    return {-wind, wind, M, residual};
  }
  throw std::runtime_error("fredholm_index: grid refinement exceeded 2^20 samples");
}

}  // namespace hlab
