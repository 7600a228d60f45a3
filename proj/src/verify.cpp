#include "hyperdisc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/error.hpp"
#include "hyperdisc/exact.hpp"
#include "hyperdisc/harness.hpp"
#include "hyperdisc/iterated.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/oracles.hpp"
#include "hyperdisc/partial.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

namespace {

bool full(Scale s) { return s == Scale::full; }

template <class F>
CheckResult timed(int id, std::string name, F&& body) {
  CheckResult r;
  r.id = id;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Hypergraph dep_graph(std::size_t n, std::size_t m, std::size_t d, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeDependent{d};
  mp.seed = seed;
  return generate(mp);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

Scale parse_scale(const std::string& s) {
  if (s == "smoke") return Scale::smoke;
  if (s == "full") return Scale::full;
  throw Error(errc::kInvalidParameter, "invalid scale '" + s + "' (expected smoke|full)");
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerifyReport::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["scale"] = scale == Scale::full ? "full" : "smoke";
  j["all_passed"] = all_passed();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["detail"] = c.detail;
    if (with_timing) e["seconds"] = c.seconds;
    arr.push_back(e);
  }
  j["checks"] = arr;
  return j.dump(2);
}

CheckResult check_oracle_equivalence(std::uint64_t seed, Scale scale) {
  return timed(1, "oracle equivalence", [&](CheckResult& r) {
    const std::size_t count = full(scale) ? 200 : 40;
    static constexpr double kP[] = {0.2, 0.35, 0.5, 0.65, 0.8};
    std::size_t mismatches = 0;
    for (std::size_t t = 0; t < count; ++t) {
      auto rng = Xoshiro256::stream(seed, 1000 + t);
      ModelParams mp;
      mp.n = 4 + t % 11;
      mp.m = 1 + rng.below(2 * mp.n);
      mp.seed = derive_seed(seed, 1, t);
      if (t % 2 == 0) {
        mp.kind = EdgeIndependent{kP[rng.below(5)]};
      } else {
        mp.kind = EdgeDependent{1 + rng.below(mp.m)};
      }
      const Hypergraph h = generate(mp);
      const auto a = disc_exact(h);
      const auto b = disc_branch_bound(h);
      const long c = oracles::naive_disc(h);
      const bool ok = a.disc == c && b.disc == c && colouring_discrepancy(h, a.witness) == c &&
                      colouring_discrepancy(h, b.witness) == c;
      if (!ok) {
        if (mismatches++ == 0) {
          r.detail += "first mismatch at instance " + std::to_string(t) + " (exact " + std::to_string(a.disc) +
                      ", bb " + std::to_string(b.disc) + ", naive " + std::to_string(c) + "); ";
        }
      }
    }
    r.passed = mismatches == 0;
    r.detail += std::to_string(count - mismatches) + "/" + std::to_string(count) + " instances agree";
  });
}

CheckResult check_partial_colouring(std::uint64_t seed, Scale scale) {
  return timed(2, "partial colouring postconditions", [&](CheckResult& r) {
    const std::size_t requests = full(scale) ? 50 : 10;
    const std::size_t n = 64, m = 64;
    std::size_t successes = 0, violations = 0;
    double worst_slack = -1e300;
    std::size_t min_frozen = n;
    for (std::size_t t = 0; t < requests; ++t) {
      ModelParams mp;
      mp.n = n;
      mp.m = m;
      mp.kind = EdgeIndependent{0.5};
      mp.seed = derive_seed(seed, 2, t);
      PartialColouringRequest req;
      req.h = generate(mp);
      auto rng = Xoshiro256::stream(mp.seed, 7);
      std::vector<double> rho(n);
      for (auto& x : rho) x = rng.uniform() - 0.5;
      req.rho = FractionalColouring(rho);
      // Three tight edges, the rest loose enough to keep the budget feasible.
      req.lambda.assign(m, 8.1);
      for (int k = 0; k < 3; ++k) req.lambda[rng.below(m)] = 0.5;
      req.seed = mp.seed;
      req.max_attempts = 100;
      if (budget_check(req.h, req.lambda) > 1.0) throw std::logic_error("request budget infeasible");
      try {
        const auto res = partial_colour(req);
        ++successes;
        std::size_t frozen = 0;
        for (std::size_t v = 0; v < n; ++v) {
          if (std::abs(res.psi[v]) >= 1.0 - req.delta) ++frozen;
        }
        min_frozen = std::min(min_frozen, frozen);
        if (frozen < n / 2) ++violations;
        for (std::size_t e = 0; e < m; ++e) {
          const double move = edge_sum(req.h, res.psi, e) - edge_sum(req.h, req.rho, e);
          const double allowed = req.lambda[e] * std::sqrt(static_cast<double>(req.h.edge_size(e)));
          worst_slack = std::max(worst_slack, std::abs(move) - allowed);
          if (std::abs(move) > allowed + 1e-6) ++violations;
        }
      } catch (const WalkFailed&) {
      }
    }
    const double rate = static_cast<double>(successes) / static_cast<double>(requests);
    r.passed = violations == 0 && rate >= 0.95;
    std::ostringstream os;
    os << "success rate " << rate << " (" << successes << "/" << requests << "), postcondition violations "
       << violations << ", min frozen " << min_frozen << ", max (|move| - budget) " << worst_slack;
    r.detail = os.str();
  });
}

CheckResult check_iterated_envelope(std::uint64_t seed, Scale scale) {
  return timed(3, "iterated algorithm envelope", [&](CheckResult& r) {
    const std::size_t seeds = full(scale) ? 20 : 3;
    const std::size_t n = 256, m = 8192, d = 1024;
    const Schedule s = make_schedule(n, m, d);
    std::size_t aborts = 0, over = 0, movement = 0;
    long worst = 0;
    for (std::size_t t = 0; t < seeds; ++t) {
      const Hypergraph h = dep_graph(n, m, d, derive_seed(seed, 3, t));
      try {
        const auto res = run_iterated(h, s, derive_seed(seed, 3, t));
        worst = std::max(worst, res.disc);
        if (static_cast<double>(res.disc) > 4.0 * s.f_hat + 1.0) ++over;
        for (const auto& rt : res.trace) {
          const double allowed = rt.phase == Phase::one ? s.round_target(rt.round_index) : 1e-6 * std::sqrt(double(n));
          if (rt.edges_after_pruning > 0 && rt.movement_max > allowed + 1e-6) ++movement;
        }
      } catch (const RoundAborted&) {
        ++aborts;
      }
    }
    r.passed = aborts == 0 && over == 0 && movement == 0;
    std::ostringstream os;
    os << "f_hat " << s.f_hat << ", envelope " << 4.0 * s.f_hat + 1.0 << ", worst disc " << worst << ", aborts "
       << aborts << ", over envelope " << over << ", movement violations " << movement << " over " << seeds
       << " seeds";
    r.detail = os.str();
  });
}

CheckResult check_interval_bounds(std::uint64_t seed, Scale scale) {
  return timed(4, "interval bound validity", [&](CheckResult& r) {
    std::vector<std::size_t> ns;
    if (full(scale)) {
      for (std::size_t n = 1; n <= 16; ++n) ns.push_back(n);
    } else {
      ns = {4, 8, 12, 16};
    }
    const std::size_t vectors = full(scale) ? 20 : 5;
    static constexpr double kIntervals[][2] = {{0, 0}, {-1, 1}, {-2, 2}, {-3, 1}, {-5, 5}};
    std::size_t cases = 0, failures = 0;
    double max_ratio = 0.0;
    for (auto n : ns) {
      for (int pi = 1; pi <= 9; ++pi) {
        const double p = pi / 10.0;
        bounds::BoundParams bp;
        bp.n = n;
        bp.p = p;
        bp.eps = 0.0;
        bp.zeta = p;
        for (std::size_t v = 0; v < vectors; ++v) {
          auto rng = Xoshiro256::stream(derive_seed(seed, 4, n * 100 + pi), v);
          std::vector<int> a(n);
          for (auto& x : a) x = (rng.next() >> 63) ? 1 : -1;
          const auto dist = oracles::sum_distribution(a, std::vector<double>(n, p));
          for (const auto& iv : kIntervals) {
            long double prob = 0.0L;
            for (const auto& [s, q] : dist) {
              if (s >= iv[0] && s <= iv[1]) prob += q;
            }
            const double tight = bounds::interval_bound_tight(bp, iv[0], iv[1]);
            const double rough = bounds::interval_bound_rough(bp, iv[0], iv[1]);
            ++cases;
            if (!(prob <= tight && tight <= rough)) ++failures;
            max_ratio = std::max(max_ratio, static_cast<double>(prob) / tight);
          }
        }
      }
    }
    r.passed = failures == 0;
    std::ostringstream os;
    os << failures << " dominance failures in " << cases << " cases; max P/tight " << max_ratio;
    r.detail = os.str();
  });
}

CheckResult check_parity(std::uint64_t seed, Scale scale) {
  return timed(5, "parity formulas", [&](CheckResult& r) {
    double max_err = 0.0;
    for (std::size_t n = 0; n <= 20; ++n) {
      for (int pi = 0; pi <= 20; ++pi) {
        const double p = pi / 20.0;
        const long double exact = oracles::binomial_even_probability(n, p);
        max_err = std::max(max_err, static_cast<double>(std::fabs(exact - bounds::parity_even_probability(n, p))));
      }
    }
    const std::size_t samples = full(scale) ? 1'000'000 : 100'000;
    const std::size_t n = 5, m = 6, d = 2;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < samples; ++t) {
      const Hypergraph h = dep_graph(n, m, d, derive_seed(seed, 5, t));
      if (h.edge_size(0) % 2 == 1 && h.edge_size(1) % 2 == 1) ++hits;
    }
    const double q = bounds::dependent_parity_pair_probability(n, m, d);
    const double freq = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
    const double z = std::abs(freq - q) / se;
    r.passed = max_err <= 1e-12 && z <= 3.0;
    std::ostringstream os;
    os << "max |even - binomial sum| " << max_err << "; pair formula " << q << " vs Monte-Carlo " << freq << " ("
       << samples << " samples, " << z << " SE)";
    r.detail = os.str();
  });
}

CheckResult check_hypergeometric(std::uint64_t seed, Scale) {
  return timed(6, "hypergeometric concentration", [&](CheckResult& r) {
    std::size_t cases = 0, failures = 0;
    for (std::size_t m = 10; m <= 100; m += 10) {
      for (std::size_t d : {std::size_t{1}, m / 5, m / 2, m}) {
        for (std::size_t j : {std::size_t{1}, m / 3, m / 2, m - 1, m}) {
          for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const long double tail = oracles::hypergeometric_two_sided_tail(m, d, j, lambda);
            ++cases;
            if (!(tail <= bounds::hypergeometric_tail_bound(m, d, j, lambda))) ++failures;
          }
        }
      }
    }
    const std::size_t n = 500, m = 400, d = 40;
    const double alpha = std::max(double(n) / double(n + m), 0.5);
    const double lambda = 0.1, xi = 0.1;
    const Hypergraph h = dep_graph(n, m, d, derive_seed(seed, 6, 0));
    const ColumnHistory hist = column_history(h, d);
    std::size_t violated = 0;
    const std::size_t columns = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (!column_concentration_holds(hist, k, alpha, lambda, xi)) ++violated;
    }
    const double rate = static_cast<double>(violated) / static_cast<double>(columns);
    const double bound = bounds::history_failure_bound(m, d, alpha, lambda, xi);
    r.passed = failures == 0 && rate <= bound;
    std::ostringstream os;
    os << failures << " tail failures in " << cases << " cases; column violation rate " << rate << " over "
       << columns << " columns vs bound " << bound;
    r.detail = os.str();
  });
}

CheckResult check_typical_histories(std::uint64_t seed, Scale scale) {
  return timed(7, "typical histories", [&](CheckResult& r) {
    const std::size_t seeds = full(scale) ? 200 : 40;
    const std::size_t n = 500, m = 400, d = 40;
    const double alpha = std::max(double(n) / double(n + m), 0.5);
    const std::size_t i = static_cast<std::size_t>(std::floor(alpha * m));
    const double c = double(d) / double(m), p = c, eps = 0.5;
    std::size_t holds = 0, sum_fail = 0, cap_fail = 0;
    for (std::size_t t = 0; t < seeds; ++t) {
      const ColumnHistory hist = column_history(dep_graph(n, m, d, derive_seed(seed, 7, t)), d);
      if (history_event_Q(hist, i, eps, c, p)) {
        ++holds;
        continue;
      }
      bool sum_ok = true, cap_ok = true;
      for (std::size_t j = 0; j <= i; ++j) {
        if (hist.row_sum_P(j) < (1 - eps) * p * n) sum_ok = false;
        for (std::size_t k = 0; k < n; ++k) {
          if (hist.P(j, k) > (1 + eps) * c) cap_ok = false;
        }
      }
      sum_fail += !sum_ok;
      cap_fail += !cap_ok;
    }
    const double rate = static_cast<double>(holds) / static_cast<double>(seeds);
    r.passed = rate >= 0.95;
    std::ostringstream os;
    os << "Q holds in " << rate << " of " << seeds << " runs (i = " << i << "); failing runs: sum condition " << sum_fail
       << ", per-column cap " << cap_fail;
    r.detail = os.str();
  });
}

CheckResult check_phase_transition(std::uint64_t seed, Scale scale) {
  return timed(8, "phase transition shape", [&](CheckResult& r) {
    SweepConfig cfg;
    cfg.model = bounds::Model::edge_independent;
    cfg.n_grid = {24};
    for (std::size_t m = 2; m <= 24; m += full(scale) ? 1 : 2) cfg.m_grid.push_back(m);
    cfg.p_grid = {0.5};
    cfg.seeds_per_point = full(scale) ? 200 : 40;
    cfg.seed_base = derive_seed(seed, 8, 0);
    cfg.solver = Solver::exact;
    const auto recs = run_sweep(cfg);
    std::vector<double> frac(cfg.m_grid.size(), 0.0);
    std::size_t timeouts = 0;
    for (const auto& rec : recs) {
      if (rec.timed_out) ++timeouts;
      if (rec.measured_disc >= 0 && rec.measured_disc <= 1) frac[rec.point] += 1.0;
    }
    for (auto& f : frac) f /= static_cast<double>(cfg.seeds_per_point);
    int inversions = 0;
    for (std::size_t k = 1; k < frac.size(); ++k) inversions += frac[k] > frac[k - 1];
    const bool sparse_ok = inversions <= 1 && frac.front() >= 0.9 && frac.back() <= 0.5 && timeouts == 0;

    SweepConfig dense;
    dense.model = bounds::Model::edge_dependent;
    dense.n_grid = {256};
    dense.m_grid = {8192};
    dense.d_grid = {256, 512, 1024, 2048, 4096};
    dense.seeds_per_point = full(scale) ? 3 : 1;
    dense.seed_base = derive_seed(seed, 8, 1);
    dense.solver = Solver::iterated;
    const auto drecs = run_sweep(dense);
    std::vector<double> x(dense.d_grid.size()), y(dense.d_grid.size(), 0.0);
    std::size_t aborted = 0;
    for (const auto& rec : drecs) {
      if (rec.aborted) ++aborted;
      const double mu = double(rec.d) * double(rec.n) / double(rec.m);
      x[rec.point] = std::sqrt(mu * std::log(double(rec.m) / double(rec.n)));
      y[rec.point] += static_cast<double>(rec.measured_disc) / static_cast<double>(dense.seeds_per_point);
    }
    const double corr = pearson(x, y);
    r.passed = sparse_ok && aborted == 0 && corr >= 0.9;
    std::ostringstream os;
    os << "P[disc <= 1] over m = 2..24:";
    for (double f : frac) os << ' ' << f;
    os << " (inversions " << inversions << ", timeouts " << timeouts << "); dense mean disc:";
    for (double v : y) os << ' ' << v;
    os << ", Pearson vs sqrt(mu ln(m/n)) " << corr << ", aborts " << aborted;
    r.detail = os.str();
  });
}

CheckResult check_first_moment(std::uint64_t, Scale) {
  return timed(9, "first-moment dominance", [&](CheckResult& r) {
    const std::size_t n = 16, m = 16;
    const double p = 0.5, kappa = 0.05;
    const double f_hat = bounds::first_moment_scale(n, m, p, bounds::Regime::sparse);
    const long double ez = oracles::first_moment_exhaustive(n, m, p, kappa * f_hat);
    const double log_bound = bounds::first_moment_log_expected_count(n, m, p, kappa, bounds::Regime::sparse);
    r.passed = ez <= std::exp(static_cast<long double>(log_bound));
    std::ostringstream os;
    os << "exhaustive E[Z] " << static_cast<double>(ez) << " vs bound exp(" << log_bound
       << ") = " << std::exp(log_bound);
    r.detail = os.str();
  });
}

VerifyReport verify_suite(std::uint64_t seed, Scale scale) {
  VerifyReport rep;
  rep.seed = seed;
  rep.scale = scale;
  const std::function<CheckResult(std::uint64_t, Scale)> all[] = {
      check_oracle_equivalence, check_partial_colouring, check_iterated_envelope,
      check_interval_bounds,    check_parity,            check_hypergeometric,
      check_typical_histories,  check_phase_transition,  check_first_moment};
  for (const auto& f : all) rep.checks.push_back(f(seed, scale));
  return rep;
}

}  // namespace hyperdisc
