#include <doctest.h>

#include <cmath>
#include <numeric>

#include "hyperdisc/error.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/partial.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

std::size_t count_frozen(const FractionalColouring& psi, double delta) {
  std::size_t k = 0;
  for (std::size_t v = 0; v < psi.size(); ++v) k += std::abs(psi[v]) >= 1.0 - delta;
  return k;
}

}  // namespace

TEST_CASE("budget ratio closed forms") {
  CHECK(budget_check(Hypergraph(8, 0), {}) == 0.0);
  const auto h = Hypergraph(32, 32);
  CHECK(budget_check(h, std::vector<double>(32, 0.0)) == doctest::Approx(16.0));
  CHECK(budget_check(h, std::vector<double>(32, 4.0 * std::sqrt(std::log(16.0)))) == doctest::Approx(1.0));
  CHECK_THROWS_AS(budget_check(h, std::vector<double>(3, 0.0)), Error);
}

TEST_CASE("unconstrained walk freezes every coordinate") {
  PartialColouringRequest req;
  req.h = Hypergraph(2, 0);
  req.rho = FractionalColouring::zeros(2);
  req.delta = 0.1;
  req.seed = 3;
  const auto res = partial_colour(req);
  CHECK(std::abs(res.psi[0]) >= 0.9);
  CHECK(std::abs(res.psi[1]) >= 0.9);
  CHECK(res.frozen.count() == 2);
}

TEST_CASE("zero budget on one pair keeps its sum fixed") {
  PartialColouringRequest req;
  req.h = Hypergraph::from_edges(2, {{0, 1}});
  req.rho = FractionalColouring::zeros(2);
  req.lambda = {0.0};
  req.enforce_budget = false;
  for (std::uint64_t s = 0; s < 10; ++s) {
    req.seed = s;
    const auto res = partial_colour(req);
    CHECK(std::abs(res.psi[0] + res.psi[1]) <= 1e-6);
    CHECK(std::abs(res.psi[0]) >= 0.9);
  }
  req.enforce_budget = true;
  try {
    partial_colour(req);
    FAIL("expected budget_infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == std::string(errc::kBudgetInfeasible));
  }
}

TEST_CASE("already frozen targets are returned unchanged") {
  PartialColouringRequest req;
  req.h = Hypergraph::from_edges(4, {{0, 1, 2, 3}});
  req.rho = FractionalColouring({0.95, -0.99, 0.1, 0.0});
  req.lambda = {100.0};
  const auto res = partial_colour(req);
  CHECK(res.attempts_used == 0);
  CHECK(res.psi.values() == req.rho.values());
}

TEST_CASE("postconditions on random feasible requests") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    ModelParams mp;
    mp.n = 40;
    mp.m = 40;
    mp.kind = EdgeIndependent{0.5};
    mp.seed = s;
    PartialColouringRequest req;
    req.h = generate(mp);
    Xoshiro256 rng(s);
    std::vector<double> rho(40);
    for (auto& x : rho) x = 0.6 * (rng.uniform() - 0.5);
    req.rho = FractionalColouring(rho);
    req.lambda.assign(40, 8.0);
    req.lambda[s] = 0.3;
    req.seed = s;
    const auto res = partial_colour(req);
    CHECK(count_frozen(res.psi, req.delta) >= 20);
    CHECK(res.frozen.count() == count_frozen(res.psi, req.delta));
    for (std::size_t v = 0; v < 40; ++v) CHECK(std::abs(res.psi[v]) <= 1.0 + 1e-9);
    for (std::size_t e = 0; e < 40; ++e) {
      const double move = edge_sum(req.h, res.psi, e) - edge_sum(req.h, req.rho, e);
      CHECK(std::abs(move) <= req.lambda[e] * std::sqrt(double(req.h.edge_size(e))) + 1e-6);
    }
    const auto again = partial_colour(req);
    CHECK(again.psi.values() == res.psi.values());
  }
}

TEST_CASE("projector removes constraint components") {
  const std::size_t dim = 12;
  detail::TightProjector proj(dim);
  Xoshiro256 rng(5);
  std::vector<std::vector<double>> constraints;
  for (int k = 0; k < 5; ++k) {
    std::vector<double> c(dim);
    for (auto& x : c) x = rng.normal();
    CHECK(proj.add(c));
    constraints.push_back(c);
  }
  // A linear combination adds nothing.
  std::vector<double> combo(dim);
  for (std::size_t i = 0; i < dim; ++i) combo[i] = constraints[0][i] - 2 * constraints[3][i];
  CHECK_FALSE(proj.add(combo));
  CHECK(proj.rank() == 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(dim);
    for (auto& x : u) x = rng.normal();
    proj.project(u);
    const double nu = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    for (const auto& c : constraints) {
      const double nc = std::sqrt(std::inner_product(c.begin(), c.end(), c.begin(), 0.0));
      CHECK(std::abs(std::inner_product(c.begin(), c.end(), u.begin(), 0.0)) <= 1e-8 * nc * std::max(nu, 1.0));
    }
  }
  proj.clear();
  CHECK(proj.rank() == 0);
}

TEST_CASE("request validation") {
  PartialColouringRequest req;
  req.h = Hypergraph::from_edges(3, {{0, 1}});
  req.rho = FractionalColouring::zeros(2);
  req.lambda = {10.0};
  CHECK_THROWS_AS(partial_colour(req), Error);
  req.rho = FractionalColouring::zeros(3);
  req.delta = 1.5;
  CHECK_THROWS_AS(partial_colour(req), Error);
}
