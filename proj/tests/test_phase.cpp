#include <doctest.h>

#include <cmath>

#include "rem/numerics.hpp"
#include "rem/phase.hpp"

using namespace rem;

TEST_CASE("classify_zone caption examples") {
  CHECK(classify_zone({1, 2}).zone == Zone::Z1);
  CHECK(classify_zone({-3, 2}).zone == Zone::Z4);
  CHECK(classify_zone({0, 1}).zone == Zone::Boundary);
  // middle strip, split at sqrt2 (1 - sigma)
  CHECK(classify_zone({-1.2, 2}).zone == Zone::Z2);   // a > -sqrt2
  CHECK(classify_zone({-1.8, 2}).zone == Zone::Z3);   // a < -sqrt2
  CHECK(classify_zone({0.6, 0.5}).zone == Zone::Z5);  // a < sqrt2/2
  CHECK(classify_zone({0.73, 0.5}).zone == Zone::Z6);
  CHECK_THROWS_AS(classify_zone({0, -1}), InvalidParams);
}

TEST_CASE("boundary detection at the separating curves") {
  double sigma = 0.5;
  double z4 = (1.0 - sigma * sigma) / kSqrt2;
  CHECK(classify_zone({z4, sigma}).zone == Zone::Boundary);
  double z1 = (1.0 - sigma * sigma) / (kSqrt2 * sigma);
  CHECK(classify_zone({z1, sigma}).zone == Zone::Boundary);
  CHECK(classify_zone({kSqrt2 * (1.0 - sigma), sigma}).zone == Zone::Boundary);
  // sigma = 1 collapses the middle strip to the single point a = 0
  CHECK(classify_zone({1e-13, 1.0}).zone == Zone::Boundary);
  // while sigma = 1 leaves Z1 / Z4 intact away from it
  CHECK(classify_zone({0.5, 1.0}).zone == Zone::Z1);
  CHECK(classify_zone({-0.5, 1.0}).zone == Zone::Z4);
}

TEST_CASE("critical_betas formulas") {
  auto r = critical_betas({-1, 2});
  REQUIRE(r.beta_circ.has_value());
  CHECK(*r.beta_circ == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  auto cl = critical_betas({0, 1});
  REQUIRE(cl.beta_star.has_value());
  CHECK(*cl.beta_star == doctest::Approx(kSqrt2).epsilon(1e-15));

  CHECK(critical_betas({1, 2}).beta_plus ==
        doctest::Approx(kSqrt2 / 2.0).epsilon(1e-15));
  CHECK(critical_betas({-3, 2}).beta_plus == kSqrt2);

  // beta* / beta_diamond are genuine quadratic roots
  ModelParams p{1, 2};
  double bs = beta_star(p);
  double t = p.sigma * kSqrt2 + p.a;
  CHECK(std::abs(bs * bs - 2.0 * t * bs + 2.0) < 1e-12);
  ModelParams q{-3, 2};
  double bd = beta_diamond(q);
  double u = kSqrt2 - q.a;
  CHECK(std::abs(q.sigma * q.sigma * bd * bd - 2.0 * u * bd + 2.0) < 1e-12);
}

TEST_CASE("beta_star / beta_diamond throw outside their zones") {
  // (sigma sqrt2 + a)^2 < 2
  CHECK_THROWS_AS(beta_star({-2.5, 1.2}), DiscriminantNegative);
  // (sqrt2 - a)^2 < 2 sigma^2
  CHECK_THROWS_AS(beta_diamond({1, 2}), DiscriminantNegative);
}

TEST_CASE("free_energy closed-form examples") {
  CHECK(free_energy_standard(kSqrt2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(free_energy(1.0, {0, 1}) == doctest::Approx(1.5).epsilon(1e-15));
  // Zone 6 point below beta_circ = 8/15
  CHECK(free_energy(0.3, {0.2, 0.5}) ==
        doctest::Approx(1.07125).epsilon(1e-15));
  CHECK_THROWS_AS(free_energy(-1.0, {0, 1}), InvalidParams);
}

TEST_CASE("free_energy continuity at branch points") {
  const ModelParams params[] = {{0, 1}, {1, 2}, {-3, 2}, {0.2, 0.5}, {2, 0.5}};
  const double eps = 1e-8;
  for (const auto& p : params) {
    std::vector<double> branch = {kSqrt2, kSqrt2 / p.sigma};
    if (std::abs(p.sigma - 1.0) > 1e-12) {
      double bc = 2.0 * p.a / (1.0 - p.sigma * p.sigma);
      if (bc > 0.0) branch.push_back(bc);
    }
    for (double b : branch)
      CHECK(std::abs(free_energy(b - eps, p) - free_energy(b + eps, p)) <
            1e-6);
  }
}

TEST_CASE("free_energy is convex in beta") {
  const ModelParams params[] = {{0, 1}, {1, 2}, {-3, 2}, {0.2, 0.5}};
  for (const auto& p : params) {
    double prev2 = free_energy(0.01, p), prev1 = free_energy(0.02, p);
    for (double b = 0.03; b < 4.0; b += 0.01) {
      double cur = free_energy(b, p);
      CHECK(cur - 2.0 * prev1 + prev2 >= -1e-9);
      prev2 = prev1;
      prev1 = cur;
    }
  }
}

TEST_CASE("regime examples") {
  auto r1 = regime(0.5, {0, 1});
  CHECK(r1.classical);
  CHECK(r1.lln_applies);
  CHECK(r1.clt_applies);
  CHECK_FALSE(r1.stable_applies);

  auto r2 = regime(0.3, {1, 2});
  CHECK(r2.clt_applies);
  CHECK(r2.clt_holds_below == doctest::Approx(kSqrt2 / 4.0).epsilon(1e-15));

  auto r3 = regime(1.0, {-3, 2});
  CHECK(r3.stable_applies);
  CHECK(r3.dominant == Component::Standard);
  CHECK(r3.tail_index == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(r3.stable_holds_above == doctest::Approx(kSqrt2 / 2.0).epsilon(1e-15));
}

TEST_CASE("regime consistency and critical flags") {
  for (auto p : {ModelParams{1, 2}, ModelParams{0.6, 0.5}, ModelParams{0, 1}}) {
    auto r = regime(0.2, p);
    CHECK(r.lln_holds_below == doctest::Approx(2.0 * r.clt_holds_below));
  }
  auto crit = regime(kSqrt2, {0, 1});
  CHECK(crit.at_lln_critical);
  CHECK_FALSE(crit.lln_applies);
  CHECK(crit.lln_critical_limit == 0.5);
  auto critc = regime(0.5 * kSqrt2, {0, 1});
  CHECK(critc.at_clt_critical);
  CHECK(critc.clt_critical_variance == 0.5);
}

TEST_CASE("zone 5 has a proven gap between beta+/2 and beta_diamond/2") {
  ModelParams p{0.6, 0.5};
  REQUIRE(classify_zone(p).zone == Zone::Z5);
  auto r = regime(0.81, p);  // beta+/2 = 0.8 < beta inside the gap
  CHECK(r.stable_holds_above ==
        doctest::Approx(0.5 * beta_diamond(p)).epsilon(1e-15));
  REQUIRE(r.gaps.size() == 1);
  CHECK(r.gaps[0].first == doctest::Approx(r.clt_holds_below));
  CHECK(r.gaps[0].second == doctest::Approx(r.stable_holds_above));
  // 0.75 sits inside the gap: no theorem applies
  CHECK_FALSE(r.clt_applies);
  CHECK_FALSE(r.stable_applies);
}

TEST_CASE("boundary points yield a boundary report") {
  double sigma = 0.5;
  auto r = regime(1.0, {(1.0 - sigma * sigma) / (kSqrt2 * sigma), sigma});
  CHECK(r.boundary);
  CHECK_FALSE(r.lln_applies);
  CHECK_FALSE(r.clt_applies);
  CHECK_FALSE(r.stable_applies);
}

TEST_CASE("classical free energy matches the introduction formula") {
  for (double b = 0.1; b < 3.0; b += 0.1) {
    double expect = b <= kSqrt2 ? 1.0 + 0.5 * b * b : kSqrt2 * b;
    CHECK(free_energy(b, {0, 1}) == doctest::Approx(expect).epsilon(1e-15));
  }
}
