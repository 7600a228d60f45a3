#include <doctest.h>

#include "hyperdisc/error.hpp"
#include "hyperdisc/exact.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/oracles.hpp"

using namespace hyperdisc;

namespace {

Hypergraph sample(std::size_t n, std::size_t m, double p, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeIndependent{p};
  mp.seed = seed;
  return generate(mp);
}

Hypergraph drop_edge(const Hypergraph& h, std::size_t skip) {
  Hypergraph out(h.num_vertices(), 0);
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    if (e != skip) out.push_row(h, e);
  }
  return out;
}

}  // namespace

TEST_CASE("small hand instances") {
  CHECK(disc_exact(Hypergraph::from_edges(2, {{0, 1}})).disc == 0);
  CHECK(disc_exact(Hypergraph::from_edges(3, {{0, 1, 2}})).disc == 1);
  CHECK(disc_branch_bound(Hypergraph::from_edges(3, {{0, 1, 2}})).disc == 1);
  CHECK(disc_branch_bound(Hypergraph::from_edges(6, {{0, 1, 2, 3, 4, 5}})).disc == 0);
  const auto empty = disc_branch_bound(Hypergraph(5, 0));
  CHECK(empty.disc == 0);
  CHECK(empty.witness.size() == 5);
  CHECK(disc_exact(Hypergraph(1, 3)).disc == 0);
}

TEST_CASE("agreement with the naive enumerator") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto h = sample(14, 14, 0.5, s);
    const long naive = oracles::naive_disc(h);
    const auto a = disc_exact(h);
    CHECK(a.disc == naive);
    CHECK(colouring_discrepancy(h, a.witness) == naive);
  }
}

TEST_CASE("branch and bound agrees with Gray-code search") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 3 + s % 12;
    const auto h = sample(n, 1 + s % 17, 0.2 + 0.06 * (s % 10), s + 500);
    const auto a = disc_exact(h);
    const auto b = disc_branch_bound(h);
    CHECK(a.disc == b.disc);
    CHECK(colouring_discrepancy(h, b.witness) == b.disc);
    CHECK(disc_branch_bound(h, a.disc + 1).disc == a.disc);
  }
}

TEST_CASE("parity obstruction and edge deletion") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto h = sample(10, 8, 0.45, s + 900);
    const long d = disc_exact(h).disc;
    if (has_odd_edge(h)) CHECK(d >= 1);
    CHECK(parity_lower_bound(h) == (has_odd_edge(h) ? 1 : 0));
    CHECK(disc_exact(drop_edge(h, s % 8)).disc <= d);
  }
}

TEST_CASE("result does not depend on the thread count") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto h = sample(18, 20, 0.5, s + 40);
    ExactOptions one;
    const auto ref = disc_exact(h, one);
    for (int t : {2, 3, 8}) {
      ExactOptions o;
      o.threads = t;
      const auto r = disc_exact(h, o);
      CHECK(r.disc == ref.disc);
      CHECK(r.witness == ref.witness);
    }
  }
}

TEST_CASE("limits and deadlines") {
  ExactOptions o;
  o.limit_n = 10;
  try {
    disc_exact(sample(11, 3, 0.5, 1), o);
    FAIL("expected instance_too_large");
  } catch (const Error& e) {
    CHECK(e.code() == std::string(errc::kInstanceTooLarge));
  }
  ExactOptions late;
  late.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  const auto hard = sample(28, 40, 0.5, 3);
  CHECK_THROWS_AS(disc_exact(hard, late), Error);
  CHECK_THROWS_AS(disc_branch_bound(hard, std::nullopt, late), Error);
}
