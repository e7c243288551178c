// Explicit similarity intertwiners and their verification: C_phi for
// M_z ~ M_phi, the Riesz-base intertwiner X for M_B ~ (+)_1^m M_z, the
// closed-form inner-product identities behind them, the Moebius-power
// expansion, and the h(B) composition checker.
//
// Every residual travels with its comparison-region declaration; exact
// regions and truncation-tail regions are never averaged together.
#pragma once

#include "core/diagnostics.hpp"

namespace hlab {

struct IntertwinerReport {
  int N = 0;
  double residual_exact = 0.0;   // relative Frobenius on the declared exact region
  std::string exact_region;
  double residual_tail = 0.0;    // relative Frobenius including truncation-tail columns
  std::string tail_region;
  SingularBounds invertibility;  // bounds of the beta-conjugated intertwiner
  std::string symbol;
  std::string weight;
};

// Phi = X_{phi^n}; checks Phi M_z - M_phi Phi (exact on columns 0..N-2).
IntertwinerReport composition_intertwiner(const MobiusMap& map, const WeightSequence& seq, int N);

struct BlaschkeIntertwinerReport {
  IntertwinerReport base;
  int m = 0;                 // Blaschke order
  Matrix gram_block;         // m x m kernel Gram block (entries ~ 1/(1 - z_i conj(z_j)))
};

// X(e_{jn}) = B^n / (beta_n (1 - conj(z_j) z)), columns interleaved n-major.
BlaschkeIntertwinerReport blaschke_intertwiner(const BlaschkeProduct& b,
                                               const WeightSequence& seq, int N);

struct InnerIdentityEntry {
  cplx value;
  cplx expected;
  double dev = 0.0;
};

struct InnerIdentityReport {
  InnerIdentityEntry kb_kb;    // <kappa B^i, kappa B^j> vs delta_ij
  InnerIdentityEntry kzb_kzb;  // <kappa z B^i, kappa z B^j> vs delta_ij
  InnerIdentityEntry kzb_kb;   // <kappa z B^i, kappa B^j> vs z0 delta_ij
  double dev_max = 0.0;
  int i = 0, j = 0, N = 0;
  cplx z0;
};

// B = z phi_{z0}, kappa = sqrt(1-|z0|^2)/(1 - conj(z0) z); classical H^2 inner
// products by truncated coefficient sums.
InnerIdentityReport verify_inner_identities(cplx z0, int i, int j, int N);

struct ExpandReport {
  PowerSeries lambda;           // Taylor coefficients of f(phi)
  double recon_residual = 0.0;  // ||f - sum lambda_k phi^k||_{H^2}
  double recon_residual_rel = 0.0;
  double tail_estimate = 0.0;   // estimated sum_{k>=N} |f_k| (input quality figure)
  int N = 0;
};

// lambda_k = coefficients of f(phi); the involution gives f = sum lambda_k phi^k.
ExpandReport mobius_power_expand(const PowerSeries& f, const MobiusMap& map);

struct ComposeCheckReport {
  double residual = 0.0;  // max coefficient deviation |f - h(B)| on the prefix
  bool precomposed = false;  // true when B(0) != 0 forced the phi_{B(0)} reduction
  int N = 0;
};

// Verifies f = h(B); when B(0) != 0, uses h(B) = (h(phi_c))((phi_c)(B)) with
// c = B(0) so the inner factor vanishes at 0.
ComposeCheckReport check_h_circ_B(const PowerSeries& f, const PowerSeries& h,
                                  const BlaschkeProduct& b, int N);

}  // namespace hlab
