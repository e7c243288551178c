#include <doctest.h>

#include <cmath>

#include "core/similarity.hpp"

using namespace hlab;

TEST_CASE("similarity: rotation symbol intertwines exactly") {
  // z0 = 0: phi = -z, X is diag(+-1), every region is exact
  auto rep = composition_intertwiner(MobiusMap(cplx(0.0, 0.0)), WeightSequence::bergman(1.0), 64);
  CHECK(rep.residual_exact == 0.0);
  CHECK(rep.residual_tail == 0.0);
  CHECK(rep.invertibility.sigma_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.invertibility.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("similarity: composition intertwiner for phi_{1/2} on Bergman(1)") {
  const MobiusMap map(cplx(0.5, 0.0));
  const auto seq = WeightSequence::bergman(1.0);
  const double frozen_tail[3] = {0.006922, 0.003453, 0.001726};
  const int ladder[3] = {128, 256, 512};
  double tails[3];
  for (int i = 0; i < 3; ++i) {
    auto rep = composition_intertwiner(map, seq, ladder[i]);
    CHECK(rep.N == ladder[i]);
    CHECK(rep.residual_exact <= 1e-12);  // columns 0..N-2 commute exactly
    CHECK(rep.residual_tail == doctest::Approx(frozen_tail[i]).epsilon(1e-3));
    CHECK_FALSE(rep.exact_region.empty());
    CHECK_FALSE(rep.tail_region.empty());
    tails[i] = rep.residual_tail;
    if (ladder[i] == 256) {
      // invertibility bounds match the Riesz ladder estimators bit-for-bit
      CHECK(rep.invertibility.sigma_min ==
            doctest::Approx(0.19894715436021643).epsilon(1e-9));
      CHECK(rep.invertibility.sigma_max ==
            doctest::Approx(5.063538718480779).epsilon(1e-9));
    }
  }
  // ~1/N decay of the truncation-tail residual
  CHECK(tails[1] < 0.6 * tails[0]);
  CHECK(tails[2] < 0.6 * tails[1]);
}

TEST_CASE("similarity: complex and rotated symbols stay exact on the prefix") {
  for (double theta : {0.0, 0.9}) {
    auto rep = composition_intertwiner(MobiusMap(cplx(0.3, 0.2), theta),
                                       WeightSequence::dirichlet(1.0), 128);
    CHECK(rep.residual_exact <= 1e-12);
    CHECK(rep.invertibility.sigma_min > 0.01);
  }
}

TEST_CASE("similarity: blaschke intertwiner for zeros {1/2, -1/2} on Bergman(1)") {
  BlaschkeProduct b({cplx(0.5, 0.0), cplx(-0.5, 0.0)});
  const auto seq = WeightSequence::bergman(1.0);
  const double frozen_tail[3] = {0.015573, 0.007791, 0.003859};
  const double frozen_smin[3] = {0.242967, 0.230319, 0.224384};
  const int ladder[3] = {128, 256, 512};
  for (int i = 0; i < 3; ++i) {
    auto rep = blaschke_intertwiner(b, seq, ladder[i]);
    CHECK(rep.m == 2);
    CHECK(rep.base.residual_exact <= 1e-12);
    CHECK(rep.base.residual_tail == doctest::Approx(frozen_tail[i]).epsilon(1e-3));
    CHECK(rep.base.invertibility.sigma_min == doctest::Approx(frozen_smin[i]).epsilon(1e-4));
    CHECK(rep.base.invertibility.sigma_max ==
          doctest::Approx(1.5527471660932535).epsilon(1e-6));

    if (ladder[i] == 512) {
      REQUIRE(rep.gram_block.rows() == 2);
      // Gram of the kernel block: 1/(1 - z_i conj(z_j)) = [[4/3, 4/5], [4/5, 4/3]]
      CHECK(std::abs(rep.gram_block(0, 0) - cplx(4.0 / 3.0)) <= 1e-8);
      CHECK(std::abs(rep.gram_block(1, 1) - cplx(4.0 / 3.0)) <= 1e-8);
      CHECK(std::abs(rep.gram_block(0, 1) - cplx(4.0 / 5.0)) <= 1e-8);
      CHECK(std::abs(rep.gram_block(1, 0) - cplx(4.0 / 5.0)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(
      blaschke_intertwiner(BlaschkeProduct({cplx(0.3, 0.0), cplx(0.3, 0.0)}), seq, 64),
      std::invalid_argument);
}

TEST_CASE("similarity: closed-form inner identities") {
  for (cplx z0 : {cplx(0.3, 0.0), cplx(0.5, 0.3), cplx(0.8, 0.0)}) {
    auto rep = verify_inner_identities(z0, 3, 3, 1024);
    CHECK(std::abs(rep.kb_kb.expected - cplx(1.0)) == 0.0);
    CHECK(std::abs(rep.kzb_kzb.expected - cplx(1.0)) == 0.0);
    CHECK(std::abs(rep.kzb_kb.expected - z0) == 0.0);
    CHECK(rep.dev_max <= 1e-8);

    auto off = verify_inner_identities(z0, 2, 5, 1024);
    CHECK(std::abs(off.kb_kb.expected) == 0.0);
    CHECK(std::abs(off.kzb_kb.expected) == 0.0);
    CHECK(off.dev_max <= 1e-8);
  }
  // truncation deviation decays with N (or sits at the arithmetic floor)
  auto d256 = verify_inner_identities(cplx(0.8, 0.0), 3, 3, 256).dev_max;
  auto d512 = verify_inner_identities(cplx(0.8, 0.0), 3, 3, 512).dev_max;
  CHECK(d512 <= std::max(d256, 1e-12));
}

TEST_CASE("similarity: mobius power expansion") {
  const MobiusMap map(cplx(0.5, 0.0));
  // lambda's own truncation tail (~0.5^N) limits the reconstruction, so the
  // exact-coefficient checks use an order with that tail below 1e-12
  auto rep = mobius_power_expand(monomial(1, 64), map);
  CHECK(std::abs(rep.lambda[0] - cplx(0.5)) <= 1e-15);
  CHECK(std::abs(rep.lambda[1] - cplx(-0.75)) <= 1e-15);
  CHECK(std::abs(rep.lambda[2] - cplx(-0.375)) <= 1e-15);
  CHECK(std::abs(rep.lambda[3] - cplx(-0.1875)) <= 1e-15);
  CHECK(rep.recon_residual <= 1e-12);

  auto one = mobius_power_expand(monomial(0, 16), map);
  CHECK(std::abs(one.lambda[0] - cplx(1.0)) <= 1e-15);
  for (int k = 1; k < 16; ++k) CHECK(std::abs(one.lambda[size_t(k)]) <= 1e-15);

  // a Blaschke product with zeros <= 0.8 reconstructs through the involution
  BlaschkeProduct b({cplx(0.6, 0.0), cplx(-0.2, 0.3)});
  auto br = mobius_power_expand(blaschke_series(b, 1024), map);
  CHECK(br.recon_residual <= 1e-8);
  CHECK(br.recon_residual_rel <= 1e-8);

  // tail fitting needs true trailing coefficients; at order 128 the products
  // are naive and the geometric decay is genuine, not FFT noise floor
  auto small = mobius_power_expand(blaschke_series(b, 128), map);
  CHECK(small.tail_estimate <= 1e-6);
  CHECK(small.tail_estimate > 0.0);
}

TEST_CASE("similarity: h o B composition checker") {
  // z^4 = (z^2) o (z^2): every coefficient operation is exact
  BlaschkeProduct z2({cplx(0.0, 0.0), cplx(0.0, 0.0)});
  auto exact = check_h_circ_B(monomial(4, 64), monomial(2, 64), z2, 64);
  CHECK(exact.residual == 0.0);
  CHECK_FALSE(exact.precomposed);

  // B(0) != 0 forces the phi_{B(0)} reduction
  BlaschkeProduct b({cplx(0.5, 0.0), cplx(-0.5, 0.0)});
  auto B = blaschke_series(b, 128);
  auto f = mul(B, B);
  auto viaB = check_h_circ_B(f, monomial(2, 128), b, 128);
  CHECK(viaB.precomposed);
  CHECK(viaB.residual <= 1e-12);

  auto wrong = check_h_circ_B(monomial(3, 64), monomial(2, 64), z2, 64);
  CHECK(wrong.residual >= 0.9);

  CHECK_THROWS_AS(check_h_circ_B(monomial(1, 2), monomial(1, 2), z2, 1), std::invalid_argument);
}
