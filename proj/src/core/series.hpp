// Truncated complex power series: the coefficient-level realization of
// Hol(D) elements, Moebius maps and Blaschke products, plus weighted norms.
//
// Truncation contract: sums, Cauchy products, derivatives, reciprocals and
// formal compositions with inner series vanishing at 0 produce the exact
// prefix of the true result. Only compose_with_mobius carries tail error
// (from the unseen coefficients of f beyond the truncation order).
#pragma once

#include <complex>
#include <vector>

#include "core/weights.hpp"

namespace hlab {

using cplx = std::complex<double>;
using PowerSeries = std::vector<cplx>;  // c_0 .. c_{N-1}; order = size

struct MobiusMap {
  cplx z0;
  double theta = 0.0;
  explicit MobiusMap(cplx z0_, double theta_ = 0.0);  // requires |z0| < 1
};

struct BlaschkeProduct {
  std::vector<cplx> zeros;  // all |z_j| < 1; repeats legal for the product itself
  double theta = 0.0;
  explicit BlaschkeProduct(std::vector<cplx> zeros_, double theta_ = 0.0);
  int order() const { return int(zeros.size()); }
  double max_zero_modulus() const;
  bool zeros_distinct(double min_dist = 1e-6) const;
};

enum class MulPolicy { Auto, Naive, Fft };

PowerSeries truncate(PowerSeries f, int N);  // cut or zero-pad to order N
PowerSeries monomial(int k, int N);

// phi(z) = e^{i theta} (z0 - z)/(1 - conj(z0) z), exact closed-form prefix.
PowerSeries mobius_series(const MobiusMap& map, int N);
// e^{i theta} prod_j phi_{z_j}(z) by iterated truncated products (exact prefix).
PowerSeries blaschke_series(const BlaschkeProduct& b, int N);

// Equal orders required; result has the same order (truncated Cauchy product).
PowerSeries mul(const PowerSeries& f, const PowerSeries& g, MulPolicy policy = MulPolicy::Auto);

// Formal composition f(g); requires g_0 = 0 and equal orders.
PowerSeries compose(const PowerSeries& f, const PowerSeries& g);
// f(phi) by Horner over the closed-form phi prefix; exact up to f's own tail.
PowerSeries compose_with_mobius(const PowerSeries& f, const MobiusMap& map);

PowerSeries derivative(const PowerSeries& f);
PowerSeries reciprocal(const PowerSeries& f);  // requires |f_0| > 1e-12
cplx eval_at(const PowerSeries& f, cplx z);
// Values at the M-th roots of unity (M a power of two >= order).
std::vector<cplx> eval_circle(const PowerSeries& f, int M);

// Taylor prefix of (phi_t')^alpha = (t^2-1)^alpha (1-tz)^{-2 alpha}, principal
// branch: the negative real base contributes |1-t^2|^alpha e^{i pi alpha}.
PowerSeries power_derivative_alpha(double t, double alpha, int N);

double weighted_norm(const PowerSeries& f, const WeightSequence& seq);
double weighted_log_norm(const PowerSeries& f, const WeightSequence& seq);  // log of norm
cplx weighted_inner(const PowerSeries& f, const PowerSeries& g, const WeightSequence& seq);

// Estimated sum_{k >= N} |f_k| by geometric extrapolation of the trailing
// coefficients; 0 for (effectively) polynomial inputs, NaN when no decaying
// ratio can be fit.
double geometric_tail_estimate(const PowerSeries& f);

}  // namespace hlab
