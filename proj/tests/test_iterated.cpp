#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/error.hpp"
#include "hyperdisc/iterated.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

Hypergraph dep(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeDependent{d};
  mp.seed = seed;
  return generate(mp);
}

// Mostly pairs plus a handful of large edges, so that a few edges survive
// pruning while the budget stays feasible.
Hypergraph mixed(std::size_t n, std::size_t pairs, std::size_t large, std::size_t large_size, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  Hypergraph h(n, pairs + large);
  for (std::size_t e = 0; e < pairs; ++e) {
    const auto a = rng.below(n);
    auto b = rng.below(n - 1);
    if (b >= a) ++b;
    h.set(e, a);
    h.set(e, b);
  }
  for (std::size_t e = pairs; e < pairs + large; ++e) {
    std::size_t placed = 0;
    while (placed < large_size) {
      const auto v = rng.below(n);
      if (!h.contains(e, v)) {
        h.set(e, v);
        ++placed;
      }
    }
  }
  return h;
}

double need(double n, double m, double mu) { return std::log(m / n) * std::pow(std::log(mu) + 2.0, 5); }

}  // namespace

TEST_CASE("beta") {
  const double mu = 64, n = 1024, m = 65536;
  const double beta = compute_beta(1024, 65536, 4096);
  CHECK(beta == doctest::Approx(need(n, m, mu) / mu).epsilon(1e-14));
  CHECK(beta_condition_holds(1024, 65536, 4096, beta * (1 + 1e-12)));
  // ln(m/n) as a fallback does not satisfy the condition at this point.
  CHECK_FALSE(beta_condition_holds(1024, 65536, 4096, std::log(64.0)));
  for (std::size_t d : {256, 1024, 4096, 8192}) {
    const double b = compute_beta(256, 8192, d);
    CHECK(b >= 1.0);
    CHECK(beta_condition_holds(256, 8192, d, b * (1 + 1e-12)));
  }
  CHECK_THROWS_AS(compute_beta(10, 10, 5), Error);
}

TEST_CASE("beta floors at one for huge mu") {
  // mu = 2^20, ln(m/n) = ln 2: (ln mu + 2)^5 ln 2 is about 8e5 < mu.
  CHECK(compute_beta(1u << 20, 1u << 21, 1u << 21) == 1.0);
}

TEST_CASE("schedule fields") {
  const Schedule s = make_schedule(256, 8192, 1024);
  const double mu = 32.0;
  const double beta = std::max(1.0, need(256, 8192, mu) / mu);
  const double f_hat = std::sqrt(mu * std::log(32.0) * beta);
  CHECK(s.mu == mu);
  CHECK(s.beta == doctest::Approx(beta).epsilon(1e-14));
  CHECK(s.f_hat == doctest::Approx(f_hat).epsilon(1e-14));
  CHECK(s.t1 == 5);
  CHECK(s.t2 == static_cast<int>(std::floor(std::log2(2560.0 / f_hat))) + 1);
  CHECK(s.delta == 1.0 / 256);
  CHECK(s.f_hat == bounds::upper_bound_curve(256, 8192, 1024));
  for (int i = 0; i < 5; ++i) CHECK(s.round_target(i + 1) < s.round_target(i));

  CHECK(make_schedule(64, 128, 32).t1 == 4);  // mu = 16

  // n = 2^10 with f_hat = 20: 10 n / f_hat = 2^9.
  const double b = 400.0 / (16.0 * std::log(2.0));
  const Schedule t = make_schedule(1024, 2048, 32, b);
  CHECK(t.f_hat == doctest::Approx(20.0));
  CHECK(t.t2 == 10);

  CHECK_THROWS_AS(make_schedule(64, 128, 4), Error);  // mu = 2
  CHECK_THROWS_AS(make_schedule(64, 128, 32, 0.5), Error);
  CHECK_THROWS_AS(make_schedule(64, 64, 32), Error);
}

TEST_CASE("degenerate runs") {
  const Schedule s = make_schedule(256, 8192, 1024);
  const auto empty = run_iterated(Hypergraph(256, 0), s, 1);
  CHECK(empty.disc == 0);
  CHECK(empty.phi == Colouring::all_plus(256));
  CHECK_THROWS_AS(run_iterated(Hypergraph(10, 5), s, 1), Error);
}

TEST_CASE("all edges pruned") {
  const auto h = dep(256, 8192, 1024, 4);
  const Schedule s = make_schedule(256, 8192, 1024);
  IteratedOptions o;
  o.keep_round_graphs = true;
  const auto r = run_iterated(h, s, 9, o);
  std::size_t largest = 0;
  for (std::size_t e = 0; e < h.num_edges(); ++e) largest = std::max(largest, h.edge_size(e));
  CHECK(static_cast<double>(largest) <= s.f_hat);
  CHECK(r.disc <= static_cast<long>(largest));
  CHECK(r.disc == colouring_discrepancy(h, r.phi));
  std::size_t expect = 256;
  for (const auto& rt : r.trace) {
    CHECK(rt.active_count == expect);
    CHECK(rt.edges_after_pruning == 0);
    expect /= 2;
  }
  // Round 0 still sees the full graph, far above the good-round row count at
  // this size; once everything is pruned the later rounds are trivially good.
  const auto reps = abort_event_stats(r.trace);
  REQUIRE(reps.size() == r.trace.size());
  CHECK(reps[0].count == r.trace[0].rows_above_threshold);
  CHECK_FALSE(reps[0].good);
  for (std::size_t k = 1; k < reps.size(); ++k) CHECK(reps[k].good);
  CHECK(abort_event_stats({}).empty());
  CHECK(static_cast<double>(r.post_active) <= s.f_hat / 20);
}

TEST_CASE("surviving edges are balanced and traced") {
  const std::size_t n = 256;
  const std::size_t pairs = 300, large = 2, m = pairs + large;
  const auto h = mixed(n, pairs, large, 60, 17);
  // beta chosen so that f_hat = 10.
  const double mu = 24.0 * n / m;
  const double beta = 100.0 / (mu * std::log(double(m) / n));
  const Schedule s = make_schedule(n, m, 24, beta);
  REQUIRE(s.f_hat == doctest::Approx(10.0));
  IteratedOptions o;
  o.keep_round_graphs = true;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto r = run_iterated(h, s, seed, o);
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace[0].edges_after_pruning == large);
    CHECK(r.disc == colouring_discrepancy(h, r.phi));
    for (const auto& rt : r.trace) {
      if (rt.phase == Phase::one) CHECK(rt.movement_max <= s.round_target(rt.round_index) + 1e-6);
      CHECK(rt.budget_ratio <= 1.0);
    }
    // Large edges end within the accumulated round budgets plus rounding.
    double budget = 1.0;
    for (int i = 0; i <= s.last_round(); ++i) budget += s.round_target(i);
    for (std::size_t e = pairs; e < m; ++e) CHECK(std::abs(edge_sum(h, r.phi, e)) <= budget + s.f_hat);

    const auto reports = abort_event_stats(r.trace);
    REQUIRE(reports.size() == r.trace.size());
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& g = *r.trace[k].graph;
      std::size_t count = 0;
      if (reports[k].phase == Phase::one) {
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
          count += static_cast<double>(g.edge_size(e)) > s.good_round_threshold(reports[k].round_index);
        }
      } else {
        count = remove_small_edges(g, s.f_hat).num_edges();
      }
      CHECK(reports[k].count == count);
    }

    const auto again = run_iterated(h, s, seed, o);
    CHECK(again.phi == r.phi);
  }
}

TEST_CASE("rounds abort when the budget is infeasible") {
  const auto h = dep(64, 4096, 2048, 1);
  const Schedule s = make_schedule(64, 4096, 2048, 1.0);
  try {
    run_iterated(h, s, 1);
    FAIL("expected round_aborted");
  } catch (const RoundAborted& e) {
    CHECK(e.code() == std::string(errc::kRoundAborted));
    REQUIRE_FALSE(e.trace.empty());
    CHECK(e.trace.back().aborted);
    CHECK(e.trace.back().budget_ratio > 1.0);
    CHECK(std::string(e.what()).find("round 0") != std::string::npos);
  }
}

TEST_CASE("trace serialises one object per round") {
  const auto h = dep(256, 8192, 1024, 2);
  const auto r = run_iterated(h, make_schedule(256, 8192, 1024), 5);
  std::istringstream in(trace_to_jsonl(r.trace));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["round_index"].get<std::size_t>() == rows);
    CHECK(j.contains("budget_ratio"));
    CHECK(j.contains("movement_max"));
    ++rows;
  }
  CHECK(rows == r.trace.size());
}
