#include "core/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace hlab {

namespace {

cplx plain_inner(const PowerSeries& f, const PowerSeries& g) {
  cplx acc = 0.0;
  for (size_t k = 0; k < f.size(); ++k) acc += std::conj(g[k]) * f[k];
  return acc;
}

}  // namespace

IntertwinerReport composition_intertwiner(const MobiusMap& map, const WeightSequence& seq, int N) {
  if (N < 2) throw std::invalid_argument("composition_intertwiner: N must be >= 2");
  const PowerSeries phi = mobius_series(map, N);
  const Matrix Phi = transformation_matrix(mobius_power_family(map).build(N), N);
  const Matrix Mz = mult_matrix(monomial(1, N), N);
  const Matrix Mphi = mult_matrix(phi, N);

  const Matrix R = Phi * Mz - Mphi * Phi;
  const double scale = Phi.norm() * Mz.norm();
  IntertwinerReport rep;
  rep.N = N;
  rep.residual_exact = R.leftCols(N - 1).norm() / scale;
  rep.exact_region = "columns 0.." + std::to_string(N - 2) + " (exact prefix)";
  rep.residual_tail = R.norm() / scale;
  rep.tail_region = "all columns (column " + std::to_string(N - 1) + " is the truncation edge)";
  const double t = std::abs(map.z0);
  rep.invertibility = ladder_bounds(scale_conjugate(Phi, seq, ScaleDirection::Beta),
                                    N, (1.0 + t) / (1.0 - t));
  rep.symbol = "mobius";
  rep.weight = seq.label();
  return rep;
}

BlaschkeIntertwinerReport blaschke_intertwiner(const BlaschkeProduct& b,
                                               const WeightSequence& seq, int N) {
  if (!b.zeros_distinct(1e-6))
    throw std::invalid_argument("blaschke_intertwiner: zeros must be pairwise distinct");
  const int m = b.order();
  if (N < 2 * m) throw std::invalid_argument("blaschke_intertwiner: N must be >= 2m");

  // kernels 1/(1 - conj(z_j) z) and the interleaved coefficient-basis columns
  std::vector<PowerSeries> kernels;
  for (const cplx& z : b.zeros) {
    PowerSeries den(size_t(N), cplx(0.0));
    den[0] = 1.0;
    den[1] = -std::conj(z);
    kernels.push_back(reciprocal(den));
  }
  const PowerSeries B = blaschke_series(b, N);
  Matrix Xc(N, N);   // column i=(n,r): B^n k_r / beta_n
  Matrix Conj(N, N); // the same operator between orthonormal bases
  {
    PowerSeries Bn(size_t(N), cplx(0.0));
    Bn[0] = 1.0;
    for (int i = 0; i < N; ++i) {
      const int r = i % m;
      const long n = i / m;
      if (i > 0 && r == 0) Bn = mul(Bn, B);
      const PowerSeries col = mul(Bn, kernels[size_t(r)]);
      const double lbn = seq.log_beta(n);
      for (int k = 0; k < N; ++k) {
        Xc(k, i) = col[size_t(k)] * std::exp(-lbn);
        Conj(k, i) = col[size_t(k)] * std::exp(seq.log_beta(k) - lbn);
      }
    }
  }

  // (+)_1^m M_z in the orthonormal base e_{jn}: e_{jn} -> w_{n+1} e_{j,n+1}
  Matrix E = Matrix::Zero(N, N);
  for (int i = 0; i + m < N; ++i) E(i + m, i) = seq.w(i / m + 1);

  const Matrix R = Xc * E - mult_matrix(B, N) * Xc;
  const double scale = Xc.norm() * E.norm();
  const int lead = int(std::ceil(0.9 * double(N)));

  BlaschkeIntertwinerReport rep;
  rep.m = m;
  rep.base.N = N;
  rep.base.residual_exact = R.topLeftCorner(lead, lead).norm() / scale;
  rep.base.exact_region = "leading " + std::to_string(lead) + " square (exact prefix)";
  rep.base.residual_tail = R.norm() / scale;
  rep.base.tail_region =
      "all columns (final " + std::to_string(m) + " columns are the truncation edge)";
  const double zeta = b.max_zero_modulus();
  rep.base.invertibility = ladder_bounds(Conj, N, (1.0 + zeta) / (1.0 - zeta));
  rep.base.symbol = "blaschke";
  rep.base.weight = seq.label();

  rep.gram_block = Matrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      rep.gram_block(i, j) = plain_inner(kernels[size_t(j)], kernels[size_t(i)]);
  return rep;
}

InnerIdentityReport verify_inner_identities(cplx z0, int i, int j, int N) {
  if (!(std::abs(z0) < 1.0)) throw std::invalid_argument("verify_inner_identities: |z0| < 1");
  if (i < 0 || j < 0) throw std::invalid_argument("verify_inner_identities: i, j must be >= 0");
  if (N < 4 * (std::max(i, j) + 2))
    throw std::invalid_argument("verify_inner_identities: N too small for the requested powers");

  // kappa = sqrt(1-|z0|^2) sum conj(z0)^k z^k; B = z phi_{z0}
  PowerSeries kappa(static_cast<size_t>(N));
  const double s = std::sqrt(1.0 - std::norm(z0));
  cplx pw = 1.0;
  for (int k = 0; k < N; ++k) {
    kappa[size_t(k)] = s * pw;
    pw *= std::conj(z0);
  }
  const PowerSeries B = mul(monomial(1, N), mobius_series(MobiusMap(z0), N));

  const int top = std::max(i, j);
  std::vector<PowerSeries> kb;  // kappa B^n
  kb.reserve(size_t(top) + 1);
  kb.push_back(kappa);
  PowerSeries p = kappa;
  for (int n = 1; n <= top; ++n) {
    p = mul(p, B);
    kb.push_back(p);
  }
  const PowerSeries z1 = monomial(1, N);
  const PowerSeries kzbi = mul(kb[size_t(i)], z1);
  const PowerSeries kzbj = mul(kb[size_t(j)], z1);

  const cplx delta = i == j ? 1.0 : 0.0;
  InnerIdentityReport rep;
  rep.i = i;
  rep.j = j;
  rep.N = N;
  rep.z0 = z0;
  rep.kb_kb = {plain_inner(kb[size_t(i)], kb[size_t(j)]), delta, 0.0};
  rep.kzb_kzb = {plain_inner(kzbi, kzbj), delta, 0.0};
  rep.kzb_kb = {plain_inner(kzbi, kb[size_t(j)]), z0 * delta, 0.0};
  for (InnerIdentityEntry* e : {&rep.kb_kb, &rep.kzb_kzb, &rep.kzb_kb}) {
    e->dev = std::abs(e->value - e->expected);
    rep.dev_max = std::max(rep.dev_max, e->dev);
  }
  return rep;
}

ExpandReport mobius_power_expand(const PowerSeries& f, const MobiusMap& map) {
  if (f.empty()) throw std::invalid_argument("mobius_power_expand: empty series");
  ExpandReport rep;
  rep.N = int(f.size());
  rep.lambda = compose_with_mobius(f, map);
  const PowerSeries recon = compose_with_mobius(rep.lambda, map);
  double acc = 0.0, ref = 0.0;
  for (size_t k = 0; k < f.size(); ++k) {
    acc += std::norm(f[k] - recon[k]);
    ref += std::norm(f[k]);
  }
  rep.recon_residual = std::sqrt(acc);
  rep.recon_residual_rel = ref > 0.0 ? rep.recon_residual / std::sqrt(ref) : rep.recon_residual;
  rep.tail_estimate = geometric_tail_estimate(f);
  return rep;
}

ComposeCheckReport check_h_circ_B(const PowerSeries& f, const PowerSeries& h,
                                  const BlaschkeProduct& b, int N) {
  if (N < 2) throw std::invalid_argument("check_h_circ_B: N must be >= 2");
  const PowerSeries fN = truncate(f, N);
  const PowerSeries hN = truncate(h, N);
  const PowerSeries B = blaschke_series(b, N);

  ComposeCheckReport rep;
  rep.N = N;
  PowerSeries comp;
  if (std::abs(B[0]) <= 1e-13) {
    comp = compose(hN, B);
  } else {
    // h(B) = (h(phi_c))(phi_c(B)) with c = B(0), so the inner factor is formal
    rep.precomposed = true;
    const MobiusMap phi_c(B[0]);
    const PowerSeries ht = compose_with_mobius(hN, phi_c);
    PowerSeries num(size_t(N), cplx(0.0)), den(size_t(N), cplx(0.0));
    num[0] = B[0];
    den[0] = 1.0;
    for (int k = 0; k < N; ++k) {
      num[size_t(k)] -= B[size_t(k)];
      den[size_t(k)] -= std::conj(B[0]) * B[size_t(k)];
    }
    PowerSeries g = mul(num, reciprocal(den));
    if (std::abs(g[0]) > 1e-10)
      throw std::runtime_error("check_h_circ_B: Moebius reduction failed to vanish at 0");
    g[0] = 0.0;
    comp = compose(ht, g);
  }
  for (int k = 0; k < N; ++k)
    rep.residual = std::max(rep.residual, std::abs(fN[size_t(k)] - comp[size_t(k)]));
  return rep;
}

}  // namespace hlab
