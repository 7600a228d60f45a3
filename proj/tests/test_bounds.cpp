#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/error.hpp"
#include "hyperdisc/iterated.hpp"
#include "hyperdisc/oracles.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;
using namespace hyperdisc::bounds;

namespace {

BoundParams params(std::size_t n, double p) {
  BoundParams bp;
  bp.n = n;
  bp.p = p;
  bp.eps = 0.0;
  bp.zeta = p;
  return bp;
}

}  // namespace

TEST_CASE("interval bounds at width zero") {
  const auto bp = params(12, 0.5);
  const double s = std::sqrt(0.5 * 12 * 0.5);
  CHECK(interval_bound_rough(bp, 1, 1) == doctest::Approx(kUniversalConstant / s));
  CHECK(interval_bound_tight(bp, 1, 1) == interval_bound_rough(bp, 1, 1));
  CHECK_THROWS_AS(interval_bound_rough(bp, 2, 1), Error);
}

TEST_CASE("unconditioned specialisation uses p(1-p)n") {
  const auto bp = params(40, 0.3);
  const double sigma = std::sqrt(0.3 * 0.7 * 40);
  CHECK(interval_bound_rough(bp, -2, 2) == doctest::Approx((kUniversalConstant + 4 / std::sqrt(2 * std::numbers::pi)) / sigma));
  CHECK(interval_bound_tight(bp, -2, 2) == doctest::Approx(interval_bound_sigma(sigma, -2, 2)));
}

TEST_CASE("tight never exceeds rough") {
  for (std::size_t n : {1, 5, 20, 100}) {
    for (double p : {0.05, 0.3, 0.5, 0.9}) {
      for (double w : {0.0, 0.5, 1.0, 3.0, 10.0, 100.0}) {
        CHECK(interval_bound_tight(params(n, p), -w / 2, w / 2) <= interval_bound_rough(params(n, p), -w / 2, w / 2));
      }
    }
  }
}

TEST_CASE("interval bounds dominate exhaustive probabilities") {
  CHECK(oracles::interval_probability(std::vector<int>(12, 1), std::vector<double>(12, 0.5), -1, 1) <=
        interval_bound_rough(params(12, 0.5), -1, 1));
  Xoshiro256 rng(14);
  std::vector<int> a(14);
  for (auto& x : a) x = (rng.next() >> 63) ? 1 : -1;
  const auto prob = oracles::interval_probability(a, std::vector<double>(14, 0.3), -2, 2);
  CHECK(prob <= interval_bound_tight(params(14, 0.3), -2, 2));
  CHECK(prob > 0);
}

TEST_CASE("parity of a binomial") {
  CHECK(parity_even_probability(7, 0.5) == 0.5);
  CHECK(parity_even_probability(2, 1.0) == 1.0);
  CHECK(parity_even_probability(4, 0.3) == doctest::Approx(static_cast<double>(oracles::binomial_even_probability(4, 0.3))).epsilon(1e-15));
  for (std::size_t n = 0; n <= 12; ++n) {
    // even + odd = 1, the odd part summed separately
    long double odd = 0;
    for (std::size_t j = 1; j <= n; j += 2) {
      long double c = 1;
      for (std::size_t i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
      odd += c * std::pow(0.2L, (long double)j) * std::pow(0.8L, (long double)(n - j));
    }
    CHECK(static_cast<double>(parity_even_probability(n, 0.2) + odd) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("dependent parity pair") {
  CHECK(dependent_parity_pair_probability(4, 6, 6) == doctest::Approx(0.0));
  CHECK(dependent_parity_pair_probability(5, 6, 6) == doctest::Approx(1.0));
  const std::size_t m = 8, n = 5;
  CHECK(dependent_parity_pair_probability(n, m, 4) ==
        doctest::Approx((1 + std::pow(1.0 - double(m) / (m - 1), double(n))) / 4));
  CHECK_THROWS_AS(dependent_parity_pair_probability(3, 1, 1), Error);
}

TEST_CASE("hypergeometric tail") {
  CHECK(hypergeometric_tail_bound(40, 8, 20, 1e-9) == doctest::Approx(2.0));
  CHECK(hypergeometric_tail_bound(10, 3, 10, 1 - 1e-12) == doctest::Approx(2 * std::exp(-1.0)));
  CHECK(oracles::hypergeometric_two_sided_tail(40, 8, 20, 0.5) <= hypergeometric_tail_bound(40, 8, 20, 0.5));
  long double total = 0;
  for (std::size_t x = 0; x <= 8; ++x) total += oracles::hypergeometric_pmf(40, 8, 20, x);
  CHECK(static_cast<double>(total) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(hypergeometric_tail_bound(40, 8, 20, 1.0), Error);
}

TEST_CASE("history failure bound") {
  CHECK(history_failure_bound(100, 300, 0.5, 1e-9, 0.1) == doctest::Approx(80.0));
  CHECK(history_failure_bound(1000, 300, 0.5, 0.1, 0.1) ==
        doctest::Approx(80.0 * std::exp(-300 * 0.01 * 0.16 / 3)));
  CHECK_NOTHROW(history_failure_bound(50, 10, 0.5, 0.1, 1.0 / 50));
  CHECK_THROWS_AS(history_failure_bound(50, 10, 0.5, 0.1, 0.5), Error);
  CHECK_THROWS_AS(history_failure_bound(50, 10, 0.5, 0.1, 0.01), Error);
}

TEST_CASE("first moment") {
  // kappa (c + sqrt(2/pi)) = 1/e with kappa f_hat >= 1 gives -m.
  const double kappa = std::exp(-1.0) / (kUniversalConstant + std::sqrt(2 / std::numbers::pi));
  // f_hat = 2^(-n/m) sqrt(n/4) must be at least 1/kappa, about 5.2.
  const std::size_t n = 1600, m = 1600;
  REQUIRE(kappa * first_moment_scale(n, m, 0.5, Regime::sparse) >= 1);
  CHECK(first_moment_log_expected_count(n, m, 0.5, kappa, Regime::sparse) == doctest::Approx(-double(m)));

  for (std::size_t mm = 200; mm < 2000; mm += 100) {
    CHECK(first_moment_log_expected_count(100, mm + 100, 0.5, 0.05, Regime::dense) <
          first_moment_log_expected_count(100, mm, 0.5, 0.05, Regime::dense));
  }
  const long double ez = oracles::first_moment_exhaustive(16, 16, 0.5, 0.05 * first_moment_scale(16, 16, 0.5, Regime::sparse));
  CHECK(ez <= std::exp(static_cast<long double>(first_moment_log_expected_count(16, 16, 0.5, 0.05, Regime::sparse))));
  CHECK_THROWS_AS(parse_regime("medium"), Error);
}

TEST_CASE("reference curves") {
  CHECK(lower_bound_curve(100, 10, 0.01, Model::edge_independent) == 1.0);
  CHECK(lower_bound_curve(64, 64, 0.5, Model::edge_independent) == doctest::Approx(0.5 * std::sqrt(32.0)));
  CHECK(upper_bound_curve(256, 8192, 1024) == make_schedule(256, 8192, 1024).f_hat);
  const double mu = 32, beta = std::max(1.0, std::log(32.0) * std::pow(std::log(mu) + 2, 5) / mu);
  CHECK(upper_bound_curve(256, 8192, 1024) == doctest::Approx(std::sqrt(mu * std::log(32.0) * beta)));
  CHECK(upper_bound_curve(1u << 20, 1u << 21, 1u << 21) == doctest::Approx(std::sqrt(std::pow(2.0, 20) * std::log(2.0))));
  for (std::size_t d : {128, 256, 1024, 4096}) {
    for (std::size_t m : {4096, 8192, 16384}) {
      CHECK(lower_bound_curve(256, m, double(d), Model::edge_dependent) <= upper_bound_curve(256, m, d));
      if (double(d) * 256 / double(m) >= 4) {
        CHECK(upper_bound_curve(256, m, d) == make_schedule(256, m, d).f_hat);
      } else {
        CHECK_THROWS_AS(make_schedule(256, m, d), Error);
      }
    }
  }
}
