#include <doctest.h>

#include <cmath>

#include "rem/numerics.hpp"

using namespace rem;

TEST_CASE("log_sum_exp basic identities") {
  CHECK(log_sum_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(log_sum_exp(kNegInf, 3.5) == 3.5);
  CHECK(log_sum_exp(3.5, kNegInf) == 3.5);
  CHECK(log_sum_exp(kNegInf, kNegInf) == kNegInf);
  // overflow-free for huge exponents
  double v = log_sum_exp(1000.0, 1000.5);
  CHECK(v == doctest::Approx(1000.5 + std::log1p(std::exp(-0.5))).epsilon(1e-15));
  CHECK(std::isfinite(v));
}

TEST_CASE("log_sum_exp span agrees with pairwise") {
  double xs[] = {1.0, 2.0, 3.0, -10.0};
  double expect = log_sum_exp(log_sum_exp(1.0, 2.0), log_sum_exp(3.0, -10.0));
  CHECK(log_sum_exp(std::span<const double>(xs)) ==
        doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("log_diff_exp") {
  CHECK(log_diff_exp(std::log(5.0), std::log(2.0)) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(log_diff_exp(7.0, kNegInf) == 7.0);
  CHECK(log_diff_exp(1000.5, 1000.0) ==
        doctest::Approx(1000.5 + std::log1p(-std::exp(-0.5))).epsilon(1e-15));
}

TEST_CASE("normal cdf against high-precision oracle") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(2.0) == doctest::Approx(0.97724986805182079).epsilon(1e-13));
  CHECK(normal_cdf(-40.0) == 0.0);  // underflows in linear domain
}

TEST_CASE("log_normal_cdf deep tail matches oracle") {
  // reference values from 40-digit arithmetic
  CHECK(log_normal_cdf(-10.0) ==
        doctest::Approx(-53.231285150512471).epsilon(1e-12));
  CHECK(log_normal_cdf(-20.0) ==
        doctest::Approx(-203.91715537109726).epsilon(1e-12));
  CHECK(log_normal_cdf(-40.0) ==
        doctest::Approx(-804.60844201375379).epsilon(1e-12));
}

TEST_CASE("log_normal_cdf is continuous at the crossover") {
  double below = log_normal_cdf(-kPhiTailCrossover - 1e-9);
  double above = log_normal_cdf(-kPhiTailCrossover + 1e-9);
  CHECK(std::abs(below - above) < 1e-6);
}

TEST_CASE("log_normal_sf mirrors log_normal_cdf") {
  for (double x : {-3.0, -0.5, 0.0, 1.0, 12.0})
    CHECK(log_normal_sf(x) == log_normal_cdf(-x));
}
