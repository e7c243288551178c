#include "core/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "core/fft.hpp"

namespace hlab {

MobiusMap::MobiusMap(cplx z0_, double theta_) : z0(z0_), theta(theta_) {
  if (!(std::abs(z0) < 1.0)) throw std::invalid_argument("MobiusMap: |z0| must be < 1");
}

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros_, double theta_)
    : zeros(std::move(zeros_)), theta(theta_) {
  if (zeros.empty()) throw std::invalid_argument("BlaschkeProduct: needs at least one zero");
  for (const cplx& z : zeros)
    if (!(std::abs(z) < 1.0)) throw std::invalid_argument("BlaschkeProduct: all |z_j| must be < 1");
}

double BlaschkeProduct::max_zero_modulus() const {
  double m = 0.0;
  for (const cplx& z : zeros) m = std::max(m, std::abs(z));
  return m;
}

bool BlaschkeProduct::zeros_distinct(double min_dist) const {
  for (size_t i = 0; i < zeros.size(); ++i)
    for (size_t j = i + 1; j < zeros.size(); ++j)
      if (std::abs(zeros[i] - zeros[j]) <= min_dist) return false;
  return true;
}

PowerSeries truncate(PowerSeries f, int N) {
  if (N < 1) throw std::invalid_argument("truncate: order must be >= 1");
  f.resize(size_t(N), cplx(0.0));
  return f;
}

PowerSeries monomial(int k, int N) {
  if (k < 0 || k >= N) throw std::invalid_argument("monomial: need 0 <= k < N");
  PowerSeries f(size_t(N), cplx(0.0));
  f[size_t(k)] = 1.0;
  return f;
}

PowerSeries mobius_series(const MobiusMap& map, int N) {
  if (N < 1) throw std::invalid_argument("mobius_series: order must be >= 1");
  const cplx phase = std::polar(1.0, map.theta);
  PowerSeries c(static_cast<size_t>(N));
  c[0] = phase * map.z0;
  const cplx lead = phase * (std::norm(map.z0) - 1.0);
  cplx pw = 1.0;  // conj(z0)^{k-1}
  for (int k = 1; k < N; ++k) {
    c[size_t(k)] = lead * pw;
    pw *= std::conj(map.z0);
  }
  return c;
}

PowerSeries blaschke_series(const BlaschkeProduct& b, int N) {
  if (N < 1) throw std::invalid_argument("blaschke_series: order must be >= 1");
  PowerSeries s(size_t(N), cplx(0.0));
  s[0] = std::polar(1.0, b.theta);
  for (const cplx& z : b.zeros) s = mul(s, mobius_series(MobiusMap(z, 0.0), N));
  return s;
}

namespace {

PowerSeries mul_naive(const PowerSeries& f, const PowerSeries& g) {
  const size_t n = f.size();
  PowerSeries out(n, cplx(0.0));
  for (size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (size_t i = 0; i <= k; ++i) acc += f[i] * g[k - i];
    out[k] = acc;
  }
  return out;
}

PowerSeries mul_fft(const PowerSeries& f, const PowerSeries& g) {
  const size_t n = f.size();
  const size_t m = next_pow2(2 * n);
  std::vector<cplx> a(m, cplx(0.0)), b(m, cplx(0.0));
  std::copy(f.begin(), f.end(), a.begin());
  std::copy(g.begin(), g.end(), b.begin());
  dft_inplace(a, -1);
  dft_inplace(b, -1);
  for (size_t i = 0; i < m; ++i) a[i] *= b[i];
  dft_inplace(a, +1);
  PowerSeries out(n);
  for (size_t i = 0; i < n; ++i) out[i] = a[i] / double(m);
  return out;
}

}  // namespace

PowerSeries mul(const PowerSeries& f, const PowerSeries& g, MulPolicy policy) {
  if (f.empty() || g.empty()) throw std::invalid_argument("mul: empty series");
  if (f.size() != g.size()) throw std::invalid_argument("mul: order mismatch");
  switch (policy) {
    case MulPolicy::Naive: return mul_naive(f, g);
    case MulPolicy::Fft: return mul_fft(f, g);
    case MulPolicy::Auto: return f.size() >= 256 ? mul_fft(f, g) : mul_naive(f, g);
  }
  throw std::logic_error("unreachable mul policy");
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("compose: empty series");
  if (f.size() != g.size()) throw std::invalid_argument("compose: order mismatch");
  if (std::abs(g[0]) > 1e-13)
    throw std::invalid_argument(
        "compose: g(0) != 0; formal composition needs an inner series vanishing at 0 "
        "(use compose_with_mobius for Moebius symbols)");
  PowerSeries g0 = g;
  g0[0] = 0.0;  // kill rounding dust so the prefix stays exact
  const size_t n = f.size();
  PowerSeries r(n, cplx(0.0));
  r[0] = f[n - 1];
  for (size_t k = n - 1; k-- > 0;) {
    r = mul(r, g0);
    r[0] += f[k];
  }
  return r;
}

PowerSeries compose_with_mobius(const PowerSeries& f, const MobiusMap& map) {
  if (f.empty()) throw std::invalid_argument("compose_with_mobius: empty series");
  const int N = int(f.size());
  const PowerSeries phi = mobius_series(map, N);
  PowerSeries r(size_t(N), cplx(0.0));
  r[0] = f[size_t(N - 1)];
  for (int k = N - 2; k >= 0; --k) {
    r = mul(r, phi);
    r[0] += f[size_t(k)];
  }
  return r;
}

PowerSeries derivative(const PowerSeries& f) {
  if (f.empty()) throw std::invalid_argument("derivative: empty series");
  PowerSeries out(f.size(), cplx(0.0));
  for (size_t k = 0; k + 1 < f.size(); ++k) out[k] = double(k + 1) * f[k + 1];
  return out;
}

PowerSeries reciprocal(const PowerSeries& f) {
  if (f.empty()) throw std::invalid_argument("reciprocal: empty series");
  if (std::abs(f[0]) <= 1e-12)
    throw std::invalid_argument("reciprocal: |f(0)| <= 1e-12, series not invertible");
  const size_t n = f.size();
  PowerSeries g(n, cplx(0.0));
  g[0] = 1.0 / f[0];
  for (size_t k = 1; k < n; ++k) {
    cplx acc = 0.0;
    for (size_t i = 1; i <= k; ++i) acc += f[i] * g[k - i];
    g[k] = -acc / f[0];
  }
  return g;
}

cplx eval_at(const PowerSeries& f, cplx z) {
  cplx acc = 0.0;
  for (size_t k = f.size(); k-- > 0;) acc = acc * z + f[k];
  return acc;
}

std::vector<cplx> eval_circle(const PowerSeries& f, int M) {
  if (M < int(f.size()) || (M & (M - 1)) != 0)
    throw std::invalid_argument("eval_circle: M must be a power of two >= order");
  std::vector<cplx> buf(size_t(M), cplx(0.0));
  std::copy(f.begin(), f.end(), buf.begin());
  dft_inplace(buf, +1);  // x_j = sum_k c_k e^{+2 pi i jk/M} = f(e^{2 pi i j/M})
  return buf;
}

PowerSeries power_derivative_alpha(double t, double alpha, int N) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("power_derivative_alpha: t in (0,1)");
  if (!(alpha >= 0.5)) throw std::invalid_argument("power_derivative_alpha: alpha must be >= 1/2");
  if (N < 1) throw std::invalid_argument("power_derivative_alpha: order must be >= 1");
  PowerSeries c(static_cast<size_t>(N));
  c[0] = std::polar(std::pow(1.0 - t * t, alpha), std::numbers::pi * alpha);
  for (int k = 0; k + 1 < N; ++k)
    c[size_t(k + 1)] = c[size_t(k)] * (t * (double(k) + 2.0 * alpha) / double(k + 1));
  return c;
}

double weighted_log_norm(const PowerSeries& f, const WeightSequence& seq) {
  if (f.empty()) throw std::invalid_argument("weighted_log_norm: empty series");
  double m = -HUGE_VAL;
  std::vector<double> terms;
  terms.reserve(f.size());
  for (size_t k = 0; k < f.size(); ++k) {
    double a = std::abs(f[k]);
    if (a == 0.0) continue;
    double t = 2.0 * (seq.log_beta(long(k)) + std::log(a));
    terms.push_back(t);
    m = std::max(m, t);
  }
  if (terms.empty()) return -HUGE_VAL;  // zero series
  double s = 0.0;
  for (double t : terms) s += std::exp(t - m);
  return 0.5 * (m + std::log(s));
}

double weighted_norm(const PowerSeries& f, const WeightSequence& seq) {
  if (f.empty()) throw std::invalid_argument("weighted_norm: empty series");
  // switch to the log domain once beta_k^2 would leave double range
  bool log_domain = false;
  for (size_t k = 0; k < f.size(); ++k)
    if (seq.log_beta(long(k)) > 345.0) { log_domain = true; break; }
  if (log_domain) return std::exp(weighted_log_norm(f, seq));
  double acc = 0.0;
  for (size_t k = 0; k < f.size(); ++k) {
    double b = seq.beta(long(k));
    acc += b * b * std::norm(f[k]);
  }
  return std::sqrt(acc);
}

cplx weighted_inner(const PowerSeries& f, const PowerSeries& g, const WeightSequence& seq) {
  if (f.size() != g.size()) throw std::invalid_argument("weighted_inner: order mismatch");
  cplx acc = 0.0;
  for (size_t k = 0; k < f.size(); ++k) {
    double b = seq.beta(long(k));
    acc += b * b * std::conj(g[k]) * f[k];
  }
  return acc;
}

double geometric_tail_estimate(const PowerSeries& f) {
  const double last = std::abs(f.back());
  if (last == 0.0) return 0.0;
  // median ratio over the trailing window
  std::vector<double> ratios;
  size_t lo = f.size() > 17 ? f.size() - 17 : 0;
  for (size_t k = lo; k + 1 < f.size(); ++k) {
    double a = std::abs(f[k]), b = std::abs(f[k + 1]);
    if (a > 0.0 && b > 0.0) ratios.push_back(b / a);
  }
  if (ratios.empty()) return std::nan("");
  std::nth_element(ratios.begin(), ratios.begin() + long(ratios.size() / 2), ratios.end());
  double rho = ratios[ratios.size() / 2];
  if (!(rho < 0.999)) return std::nan("");
  return last * rho / (1.0 - rho);
}

}  // namespace hlab
