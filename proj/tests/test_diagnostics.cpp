#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/diagnostics.hpp"

using namespace hlab;

namespace {

// diag(scale * r^j) z^j family: singular values are known exactly
FamilyBuilder diag_family(double r, std::function<double(int)> scale = nullptr) {
  FamilyBuilder fam;
  fam.label = "diag";
  fam.spread = 1.0;
  fam.build = [r, scale](int N) {
    std::vector<PowerSeries> F;
    double s = scale ? scale(N) : 1.0;
    double c = s;
    for (int j = 0; j < N; ++j) {
      auto f = monomial(j, N);
      for (auto& v : f) v *= c;
      F.push_back(std::move(f));
      c *= r;
    }
    return F;
  };
  return fam;
}

}  // namespace

TEST_CASE("diagnostics: singular bounds of tall blocks") {
  // diag(4, 2, 1, 1/2, ...) embedded in 8x8; bounds of the 8x3 block are exact
  auto fam = diag_family(0.5, [](int) { return 4.0; });
  Matrix X = transformation_matrix(fam.build(8), 8);
  auto sb = singular_bounds(X, 8, 3);
  CHECK(sb.sigma_max == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sb.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sb.rows == 8);
  CHECK(sb.cols == 3);

  // sigma_min is nondecreasing in the row count (row truncation only loses mass)
  Matrix R(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j)
      R(i, j) = cplx(std::cos(1.7 * i + 0.3 * j * j), std::sin(0.9 * i * j + 0.2));
  double prev = 0.0;
  for (int rows = 4; rows <= 12; ++rows) {
    auto b = singular_bounds(R, rows, 4);
    CHECK(b.sigma_min >= prev - 1e-12);
    prev = b.sigma_min;
  }
  CHECK_THROWS_AS(singular_bounds(R, 3, 4), std::invalid_argument);
}

TEST_CASE("diagnostics: ladder bounds split the estimators") {
  // sigma_min must come from the tall spread-aware block, sigma_max from the
  // full square compression; for the identity both are exactly 1
  Matrix I = Matrix::Identity(64, 64);
  auto b = ladder_bounds(I, 64, 3.0);
  CHECK(b.sigma_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.rows == 64);
  CHECK(b.cols == 18);  // ceil(0.8*64/3)
}

TEST_CASE("diagnostics: monomials are a Riesz base in every weight") {
  for (auto seq : {WeightSequence::bergman(1.0), WeightSequence::power_log()}) {
    auto rep = riesz_verdict(monomial_family(), seq, {32, 64, 128}, 1e-6);
    CHECK(rep.verdict == RieszClass::RieszEvidence);
    REQUIRE(rep.rungs.size() == 3);
    for (const auto& rung : rep.rungs) {
      CHECK(rung.bounds.sigma_max == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rung.bounds.sigma_min == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(rung.bounds.rows == rung.N);
      CHECK(rung.bounds.cols == (rung.N * 4 + 4) / 5);
    }
  }
}

TEST_CASE("diagnostics: mobius powers on Bergman(1) give Riesz evidence") {
  auto rep = riesz_verdict(mobius_power_family(MobiusMap(cplx(0.5, 0.0))),
                           WeightSequence::bergman(1.0), {128, 256, 512}, 1e-6);
  CHECK(rep.verdict == RieszClass::RieszEvidence);
  REQUIRE(rep.rungs.size() == 3);

  // frozen regression constants from the implementer's oracle run
  const double smax[3] = {4.921872493875946, 5.063538718480779, 5.132535103251806};
  const double smin[3] = {0.20640106501938985, 0.19894715436021643, 0.19550551728527413};
  const int cols[3] = {35, 69, 137};  // ceil(0.8 N / 3), spread (1+t)/(1-t) = 3
  for (int i = 0; i < 3; ++i) {
    CHECK(rep.rungs[size_t(i)].bounds.sigma_max == doctest::Approx(smax[i]).epsilon(1e-9));
    CHECK(rep.rungs[size_t(i)].bounds.sigma_min == doctest::Approx(smin[i]).epsilon(1e-9));
    CHECK(rep.rungs[size_t(i)].bounds.cols == cols[i]);
  }
  CHECK(rep.rungs[2].bounds.sigma_min > 0.01);

  // the plateau gate is a real gate: a 0.1% demand cannot be met here
  auto strict = riesz_verdict(mobius_power_family(MobiusMap(cplx(0.5, 0.0))),
                              WeightSequence::bergman(1.0), {128, 256, 512}, 1e-6, 0.001);
  CHECK(strict.verdict == RieszClass::Inconclusive);
}

TEST_CASE("diagnostics: mobius powers on the intermediate-growth space diverge") {
  auto rep = riesz_verdict(mobius_power_family(MobiusMap(cplx(0.5, 0.0))),
                           WeightSequence::power_log().invert(), {128, 256, 512}, 1e-6);
  CHECK(rep.verdict == RieszClass::NotBounded);

  const double smax[3] = {14688.583302325498, 76695.20759982223, 385951.6337758496};
  const double smin[3] = {1.7261540326277245e-4, 2.7939747292934325e-5, 4.98647899341405e-6};
  for (int i = 0; i < 3; ++i) {
    CHECK(rep.rungs[size_t(i)].bounds.sigma_max == doctest::Approx(smax[i]).epsilon(1e-9));
    CHECK(rep.rungs[size_t(i)].bounds.sigma_min == doctest::Approx(smin[i]).epsilon(1e-9));
  }
  // every rung multiplies sigma_max by ~5 and divides sigma_min by ~6: the
  // upper bound blows up before the floor quite reaches the 1e-6 cutoff
  CHECK(rep.rungs[2].bounds.sigma_max > 25.0 * rep.rungs[0].bounds.sigma_max);
}

TEST_CASE("diagnostics: synthetic families hit the other verdicts") {
  auto collapse = riesz_verdict(diag_family(0.5), WeightSequence::constant(), {16, 32, 64}, 1e-6);
  CHECK(collapse.verdict == RieszClass::NotLowerBounded);

  // ratio kept moderate so sigma_min = 1 stays numerically visible next to
  // sigma_max = 1.3^cols (at ratio 4 the SVD deflates it to 0 and the collapse
  // branch would fire first)
  auto blowup = riesz_verdict(diag_family(1.3), WeightSequence::constant(), {16, 32, 64}, 1e-6);
  CHECK(blowup.verdict == RieszClass::NotBounded);

  // uniform 10% shrink per rung: too fast for a plateau, too slow for collapse
  auto drift = diag_family(1.0, [](int N) { return std::pow(0.9, std::log2(double(N) / 16.0)); });
  auto inconclusive = riesz_verdict(drift, WeightSequence::constant(), {16, 32, 64}, 1e-6);
  CHECK(inconclusive.verdict == RieszClass::Inconclusive);
}

TEST_CASE("diagnostics: ladder validation and verdict names") {
  auto fam = monomial_family();
  auto seq = WeightSequence::constant();
  CHECK_THROWS_AS(riesz_verdict(fam, seq, {64}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(riesz_verdict(fam, seq, {64, 64}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(riesz_verdict(fam, seq, {128, 64}, 1e-6), std::invalid_argument);

  CHECK(std::string(riesz_class_name(RieszClass::RieszEvidence)) == "RieszEvidence");
  CHECK(riesz_class_from_name("NotBounded") == RieszClass::NotBounded);
  CHECK_THROWS_AS(riesz_class_from_name("nonsense"), std::invalid_argument);

  CHECK_THROWS_AS(riesz_blaschke_family(BlaschkeProduct({cplx(0.3, 0.0), cplx(0.3, 0.0)}),
                                        seq, {64, 128}, 1e-6),
                  std::invalid_argument);
}

TEST_CASE("diagnostics: blaschke kernel family on Bergman(1)") {
  BlaschkeProduct b({cplx(0.5, 0.0), cplx(-0.5, 0.0)});
  auto rep = riesz_blaschke_family(b, WeightSequence::bergman(1.0), {128, 256, 512}, 1e-6);
  CHECK(rep.verdict == RieszClass::RieszEvidence);
  CHECK(rep.rungs[2].bounds.sigma_min > 0.2);
}

TEST_CASE("diagnostics: growth trace on the constant weight is flat") {
  auto tr = growth_trace(MobiusMap(cplx(0.5, 0.0)), WeightSequence::constant(),
                         {0, 1, 2, 4, 8, 16, 32, 64}, 256);
  CHECK(tr.log_r[0] == 0.0);  // r_0 = 1 exactly
  for (double lr : tr.log_r) CHECK(std::abs(lr) <= 1e-8);  // inner powers have unit norm
}

TEST_CASE("diagnostics: growth trace on Bergman(1) increases but stays below 2") {
  std::vector<long> ns = {1, 2, 4, 8, 16, 32, 64};
  auto tr = growth_trace(MobiusMap(cplx(0.5, 0.0)), WeightSequence::bergman(1.0), ns, 1024);
  const double frozen_r[7] = {1.0789041210839438, 1.1639617424114308, 1.2964343570876375,
                              1.4588403053678483, 1.6153114097892065, 1.7367865883414362,
                              1.8163942213231659};
  for (int i = 0; i < 7; ++i)
    CHECK(std::exp(tr.log_r[size_t(i)]) == doctest::Approx(frozen_r[i]).epsilon(1e-9));
  for (int i = 0; i + 1 < 7; ++i) CHECK(tr.log_r[size_t(i)] < tr.log_r[size_t(i + 1)]);

  auto tail = growth_trace(MobiusMap(cplx(0.5, 0.0)), WeightSequence::bergman(1.0),
                           {128, 256}, 1024);
  CHECK(tr.log_r[6] < tail.log_r[0]);
  CHECK(tail.log_r[0] < tail.log_r[1]);
  CHECK(tail.log_r[1] < std::log(2.0));  // the bounded-trace margin

  CHECK_THROWS_AS(growth_trace(MobiusMap(cplx(0.5, 0.0)), WeightSequence::bergman(1.0),
                               {64}, 128),
                  std::invalid_argument);
}

TEST_CASE("diagnostics: growth trace diverges on the intermediate space") {
  auto inv = WeightSequence::power_log().invert();
  auto tr = growth_trace(MobiusMap(cplx(0.5, 0.0)), inv, {16, 64, 256}, 1024);
  CHECK(tr.log_r[0] == doctest::Approx(3.9965435376469074).epsilon(1e-9));
  CHECK(tr.log_r[1] == doctest::Approx(6.936547825810722).epsilon(1e-9));
  CHECK(tr.log_r[2] == doctest::Approx(9.945675849289213).epsilon(1e-9));
  // r_256 / r_16 = e^{5.95} >> 10: unbounded growth evidence, no similarity
  CHECK(tr.log_r[2] - tr.log_r[0] > std::log(10.0));
}

TEST_CASE("diagnostics: derivative-power lower bound") {
  // alpha = 1 closed form ||phi_t'||^2 = (1+t^2)/(1-t^2)
  for (double t : {0.3, 0.5, 0.6}) {
    auto rep = dnlower_check(t, 1.0, 8192);
    CHECK(rep.norm * rep.norm ==
          doctest::Approx((1.0 + t * t) / (1.0 - t * t)).epsilon(1e-8));
    CHECK(rep.bound == doctest::Approx((1.0 + t) / std::sqrt(2.0 * std::numbers::pi))
                           .epsilon(1e-12));
    CHECK(rep.pass);
  }
  // the full default grid passes
  for (double t : {0.3, 0.6, 0.9})
    for (double a : {0.75, 1.0, 2.0, 4.0}) CHECK(dnlower_check(t, a, 8192).pass);

  CHECK_THROWS_AS(dnlower_check(0.5, 0.5, 1024), std::invalid_argument);
  CHECK_THROWS_AS(dnlower_check(1.0, 1.0, 1024), std::invalid_argument);
}

TEST_CASE("diagnostics: Bergman power lower bound") {
  auto rep = blower_check(0.5, 1.0, 4, 256);
  CHECK(rep.lhs == doctest::Approx(1.296434357087638).epsilon(1e-9));
  CHECK(rep.rhs == doctest::Approx(0.6454972243679028).epsilon(1e-9));
  CHECK(rep.rhs == doctest::Approx(0.5 * std::sqrt(5.0 / 3.0)).epsilon(1e-8));
  CHECK(rep.pass);

  // lhs IS the growth-trace ratio r_n, reached through an independent path
  auto big = blower_check(0.5, 1.0, 128, 1024);
  CHECK(big.lhs == doctest::Approx(1.862842970474916).epsilon(1e-9));
  auto tr = growth_trace(MobiusMap(cplx(0.5, 0.0)), WeightSequence::bergman(1.0), {4, 128}, 1024);
  CHECK(std::exp(tr.log_r[0]) == doctest::Approx(rep.lhs).epsilon(1e-12));
  CHECK(std::exp(tr.log_r[1]) == doctest::Approx(big.lhs).epsilon(1e-12));
  CHECK(big.pass);

  CHECK(blower_check(0.5, 1.0, 256, 2048).pass);
  CHECK(blower_check(0.6, 2.0, 64, 1024).pass);
  CHECK_THROWS_AS(blower_check(0.5, 1.0, 64, 128), std::invalid_argument);
}

TEST_CASE("diagnostics: boundedness transfer (Cowen-style domination)") {
  const int N = 256;
  auto psi_z = monomial(1, N);
  auto same = cowen_transfer_check(psi_z, WeightSequence::constant(), WeightSequence::constant(), N);
  CHECK(same.sigma_a == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(same.sigma_b == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(same.pass);

  auto sq = cowen_transfer_check(monomial(2, N), WeightSequence::dirichlet(1.0),
                                 WeightSequence::constant(), N);
  CHECK(sq.sigma_a == doctest::Approx(1.9807059811242425).epsilon(1e-9));
  CHECK(sq.sigma_b == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sq.pass);

  // a lifted intermediate-growth space dominates its base (w~ >= w termwise)
  auto inv = WeightSequence::power_log().invert();
  auto psi = blaschke_series(BlaschkeProduct({cplx(0.0, 0.0), cplx(0.5, 0.0)}), N);
  auto tr = cowen_transfer_check(psi, inv.lift(), inv, N);
  CHECK(tr.pass);

  CHECK_THROWS_AS(cowen_transfer_check(monomial(0, N), WeightSequence::constant(),
                                       WeightSequence::constant(), N),
                  std::domain_error);  // psi(0) != 0
  CHECK_THROWS_AS(cowen_transfer_check(psi_z, WeightSequence::constant(),
                                       WeightSequence::dirichlet(1.0), N),
                  std::domain_error);  // domination fails
}

TEST_CASE("diagnostics: Fredholm index by the argument principle") {
  std::vector<std::vector<cplx>> zero_sets = {
      {cplx(0.5, 0.0)},
      {cplx(0.5, 0.0), cplx(-0.3, 0.0)},
      {cplx(0.5, 0.0), cplx(-0.3, 0.0), cplx(0.0, 0.3)},
      {cplx(0.5, 0.0), cplx(-0.3, 0.0), cplx(0.0, 0.3), cplx(-0.7, 0.0)},
  };
  for (size_t m = 1; m <= zero_sets.size(); ++m) {
    auto B = blaschke_series(BlaschkeProduct(zero_sets[m - 1]), 32);
    auto rep = fredholm_index(B, cplx(0.0), 128);
    CHECK(rep.index == -long(m));
    CHECK(rep.winding == long(m));
    CHECK(rep.residual <= 1e-9);
    CHECK(fredholm_index(B, cplx(0.0), 2048).index == -long(m));  // grid-doubling stable
  }

  // interior values are attained m times; exterior values never
  auto B2 = blaschke_series(BlaschkeProduct(zero_sets[1]), 32);
  CHECK(fredholm_index(B2, eval_at(B2, cplx(0.3, 0.1)), 128).index == -2);
  CHECK(fredholm_index(B2, cplx(0.9, 0.9), 128).index == 0);

  PowerSeries zminus2 = {cplx(-2.0), cplx(1.0)};
  CHECK(fredholm_index(zminus2, cplx(0.0), 16).index == 0);

  PowerSeries z3 = {0.0, 0.0, 0.0, cplx(1.0)};
  CHECK(fredholm_index(z3, cplx(0.0), 16).index == -3);

  PowerSeries zminus1 = {cplx(-1.0), cplx(1.0)};
  CHECK_THROWS_AS(fredholm_index(zminus1, cplx(0.0), 16), std::domain_error);
  CHECK_THROWS_AS(fredholm_index(zminus2, cplx(0.0), 100), std::invalid_argument);
  CHECK_THROWS_AS(fredholm_index(zminus2, cplx(0.0), 4), std::invalid_argument);
}
