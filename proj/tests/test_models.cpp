#include <doctest.h>

#include <cmath>

#include "hyperdisc/error.hpp"
#include "hyperdisc/kernels.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/oracles.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

ModelParams ind(std::size_t n, std::size_t m, double p, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeIndependent{p};
  mp.seed = seed;
  return mp;
}

ModelParams dep(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeDependent{d};
  mp.seed = seed;
  return mp;
}

}  // namespace

TEST_CASE("SplitMix64 reference output") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xE220A8397B1DCDAFULL);
  CHECK(sm.next() == 0x6E789E6AA1B965F4ULL);
}

TEST_CASE("bounded integers and normals look right") {
  Xoshiro256 rng(42);
  std::vector<int> hist(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++hist[rng.below(7)];
  for (int c : hist) CHECK(std::abs(c - draws / 7) < 5 * std::sqrt(draws / 7.0));
  double s = 0, s2 = 0;
  for (int i = 0; i < draws; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / draws) < 0.02);
  CHECK(std::abs(s2 / draws - 1.0) < 0.03);
}

TEST_CASE("degenerate parameters") {
  CHECK(generate(ind(30, 10, 0.0, 1)).total_incidences() == 0);
  CHECK(generate(ind(30, 10, 1.0, 1)).total_incidences() == 300);
  CHECK(generate(dep(30, 10, 10, 1)).total_incidences() == 300);
  CHECK_THROWS_AS(generate(ind(30, 10, 1.5, 1)), Error);
  CHECK_THROWS_AS(generate(dep(30, 10, 11, 1)), Error);
  CHECK_THROWS_AS(generate(dep(30, 10, 0, 1)), Error);
  CHECK_THROWS_AS(generate(ind(0, 10, 0.5, 1)), Error);
}

TEST_CASE("generation is deterministic and thread independent") {
  for (const auto& mp : {ind(300, 120, 0.3, 5), dep(300, 120, 17, 5), dep(5000, 64, 9, 6)}) {
    const auto ref = generate_serial(mp);
    for (int t : {1, 2, 3}) {
      kernels::set_threads(t);
      CHECK(generate(mp) == ref);
    }
  }
  kernels::set_threads(0);
  CHECK_FALSE(generate(ind(100, 50, 0.5, 1)) == generate(ind(100, 50, 0.5, 2)));
}

TEST_CASE("edge-dependent columns have exactly d ones") {
  const auto h = generate(dep(97, 40, 13, 3));
  for (auto c : degree_profile(h)) CHECK(c == 13);
}

TEST_CASE("edge-independent moments") {
  const std::size_t n = 200, m = 100, seeds = 1000;
  const double p = 0.3;
  double sum = 0, esum = 0;
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto h = generate(ind(n, m, p, s));
    const double t = static_cast<double>(h.total_incidences());
    sum += t;
    const auto e0 = static_cast<double>(h.edge_size(s % m));
    esum += e0;
  }
  const double mean = sum / seeds;
  const double se = std::sqrt(n * m * p * (1 - p) / seeds);
  CHECK(std::abs(mean - p * n * m) <= 3 * se);
  const double emean = esum / seeds;
  const double ese = std::sqrt(n * p * (1 - p) / seeds);
  CHECK(std::abs(emean - p * n) <= 3 * ese);
}

TEST_CASE("column history by hand") {
  auto h = Hypergraph::from_edges(1, {{}, {0}});
  const auto hist = column_history(h, 1);
  CHECK(hist.B(0, 0) == 1);
  CHECK(hist.B(1, 0) == 1);
  CHECK(hist.B(2, 0) == 0);
  CHECK(hist.P(0, 0) == 0.5);
  CHECK(hist.P(1, 0) == 1.0);

  const auto full = column_history(generate(dep(7, 5, 5, 1)), 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t k = 0; k < 7; ++k) CHECK(full.P(i, k) == 1.0);
  }
  CHECK_THROWS_AS(column_history(h, 2), Error);
}

TEST_CASE("column history matches suffix sums") {
  const auto h = generate(dep(50, 40, 8, 12));
  const auto hist = column_history(h, 8);
  const auto counts = oracles::suffix_column_counts(h);
  for (std::size_t i = 0; i <= 40; ++i) {
    for (std::size_t k = 0; k < 50; ++k) {
      CHECK(hist.B(i, k) == counts[i][k]);
      if (i < 40) {
        CHECK(hist.P(i, k) == static_cast<double>(counts[i][k]) / static_cast<double>(40 - i));
        CHECK(hist.P(i, k) >= 0.0);
        CHECK(hist.P(i, k) <= 1.0);
      }
      if (i > 0) CHECK(hist.B(i, k) <= hist.B(i - 1, k));
    }
  }
}

TEST_CASE("history event Q") {
  const auto hist = column_history(generate(dep(20, 10, 3, 4)), 3);
  for (std::size_t i = 0; i < 10; ++i) CHECK(history_event_Q(hist, i, 0.5, 1.0, 0.0));
  const auto ones = column_history(generate(dep(20, 10, 10, 4)), 10);
  CHECK_FALSE(history_event_Q(ones, 0, 0.1, 0.5, 1.0));
  CHECK_THROWS_AS(history_event_Q(hist, 10, 0.5, 0.3, 0.3), Error);
}
