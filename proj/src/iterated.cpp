#include "hyperdisc/iterated.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hyperdisc/rng.hpp"

namespace hyperdisc {

namespace {

double lg_floor(double x) { return std::floor(std::log2(x) + 1e-9); }

void check_dense(std::size_t n, std::size_t m) {
  if (n == 0 || m <= n) {
    throw Error(errc::kDenseRegimeRequired,
                "dense regime requires m > n >= 1 (n = " + std::to_string(n) + ", m = " + std::to_string(m) + ")");
  }
}

}  // namespace

double Schedule::good_round_threshold(int i) const { return beta * mu / (16.0 * std::pow(i + 2.0, 5)); }

double compute_beta(std::size_t n, std::size_t m, std::size_t d) {
  check_dense(n, m);
  if (d < 1 || d > m) throw Error(errc::kInvalidParameter, "d must satisfy 1 <= d <= m");
  const double mu = static_cast<double>(d) * static_cast<double>(n) / static_cast<double>(m);
  const double need = std::log(static_cast<double>(m) / static_cast<double>(n)) * std::pow(std::log(mu) + 2.0, 5);
  return std::max(1.0, need / mu);
}

bool beta_condition_holds(std::size_t n, std::size_t m, std::size_t d, double beta) {
  const double mu = static_cast<double>(d) * static_cast<double>(n) / static_cast<double>(m);
  return beta * mu >= std::log(static_cast<double>(m) / static_cast<double>(n)) * std::pow(std::log(mu) + 2.0, 5);
}

Schedule make_schedule(std::size_t n, std::size_t m, std::size_t d, std::optional<double> beta_override) {
  check_dense(n, m);
  if (d < 1 || d > m) throw Error(errc::kInvalidParameter, "d must satisfy 1 <= d <= m");
  Schedule s;
  s.n = n;
  s.m = m;
  s.d = d;
  s.mu = static_cast<double>(d) * static_cast<double>(n) / static_cast<double>(m);
  if (s.mu < 4.0) {
    throw Error(errc::kScheduleUndefined, "dense-regime schedule undefined: mu = dn/m = " + std::to_string(s.mu) + " < 4");
  }
  if (beta_override) {
    if (!(*beta_override >= 1.0)) throw Error(errc::kInvalidParameter, "beta must be >= 1");
    s.beta = *beta_override;
  } else {
    s.beta = compute_beta(n, m, d);
  }
  s.f_hat = std::sqrt(s.mu * std::log(static_cast<double>(m) / static_cast<double>(n)) * s.beta);
  s.t1 = static_cast<int>(lg_floor(s.mu));
  s.t2 = static_cast<int>(lg_floor(10.0 * static_cast<double>(n) / s.f_hat)) + 1;
  s.delta = 1.0 / static_cast<double>(n);
  return s;
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::one:
      return "one";
    case Phase::two:
      return "two";
    case Phase::post:
      return "post";
  }
  return "?";
}

RoundAborted::RoundAborted(const RoundTrace& round, std::vector<RoundTrace> trace_so_far)
    : Error(errc::kRoundAborted,
            [&] {
              std::ostringstream os;
              os << "round " << round.round_index << " (phase " << to_string(round.phase)
                 << ") aborted: budget ratio " << round.budget_ratio << " > 1 with " << round.edges_after_pruning
                 << " surviving edges on " << round.active_count << " active vertices; rows above threshold "
                 << round.rows_above_threshold << " vs allowance "
                 << static_cast<double>(round.active_count) / (round.phase == Phase::one ? 17.0 : 16.0);
              return os.str();
            }()),
      trace(std::move(trace_so_far)) {}

IteratedResult run_iterated(const Hypergraph& h, const Schedule& schedule, std::uint64_t seed,
                            const IteratedOptions& options) {
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();
  IteratedResult result;
  result.schedule = schedule;
  if (m == 0) {
    result.phi = Colouring::all_plus(n);
    result.padded_n = n;
    return result;
  }
  check_dense(n, m);

  // Pad with isolated vertices up to a power of two.
  const std::size_t big_n = std::bit_ceil(n);
  result.padded_n = big_n;
  Hypergraph current(big_n, m);
  for (std::size_t e = 0; e < m; ++e) {
    for (auto v : h.edge_vertices(e)) current.set(e, v);
  }

  std::vector<std::size_t> active(big_n);  // local index -> padded vertex
  std::iota(active.begin(), active.end(), std::size_t{0});
  std::vector<double> prev_psi(big_n, 0.0);  // on active vertices
  std::vector<double> settled(big_n, 0.0);   // fractional value when deactivated
  std::vector<double> telescoped(big_n, 0.0);
  std::vector<char> inactive(big_n, 0);

  for (int i = 0; i <= schedule.last_round() && !active.empty(); ++i) {
    RoundTrace rt;
    rt.round_index = i;
    rt.phase = i <= schedule.t1 ? Phase::one : Phase::two;
    rt.active_count = active.size();
    rt.edges_before_pruning = current.num_edges();
    const double row_threshold = rt.phase == Phase::one ? schedule.good_round_threshold(i) : schedule.f_hat;
    for (std::size_t e = 0; e < current.num_edges(); ++e) {
      if (static_cast<double>(current.edge_size(e)) > row_threshold) ++rt.rows_above_threshold;
    }
    if (options.keep_round_graphs) rt.graph = current;

    Hypergraph pruned = remove_small_edges(current, schedule.f_hat);
    rt.edges_after_pruning = pruned.num_edges();
    std::vector<double> lambda(pruned.num_edges());
    for (std::size_t e = 0; e < pruned.num_edges(); ++e) {
      lambda[e] = rt.phase == Phase::one
                      ? schedule.round_target(i) / std::sqrt(static_cast<double>(pruned.edge_size(e)))
                      : options.phase_two_lambda;
    }
    rt.budget_ratio = budget_ratio(active.size(), lambda);
    if (rt.budget_ratio > 1.0) {
      rt.aborted = true;
      result.trace.push_back(rt);
      throw RoundAborted(rt, std::move(result.trace));
    }

    PartialColouringRequest req;
    req.h = pruned;
    req.rho = FractionalColouring(prev_psi);
    req.lambda = lambda;
    req.delta = schedule.delta;
    req.seed = derive_seed(seed, 1, static_cast<std::uint64_t>(i));
    req.max_attempts = options.max_attempts;
    req.walk = options.walk;
    req.enforce_budget = false;
    const PartialColouringResult pc = partial_colour(req);
    rt.attempts = pc.attempts_used;
    rt.walk_steps = pc.total_steps;
    rt.frozen_count = pc.frozen.count();

    for (std::size_t e = 0; e < pruned.num_edges(); ++e) {
      double move = 0.0;
      for (auto v : pruned.edge_vertices(e)) move += pc.psi[v] - prev_psi[v];
      rt.movement_max = std::max(rt.movement_max, std::abs(move));
      const double allowed = lambda[e] * std::sqrt(static_cast<double>(pruned.edge_size(e)));
      if (std::abs(move) > allowed + 1e-6) throw std::logic_error("round movement bound violated");
    }
    for (std::size_t k = 0; k < active.size(); ++k) telescoped[active[k]] += pc.psi[k] - prev_psi[k];

    // Deactivate exactly half: frozen vertices with the largest |psi|, ties by index.
    const std::size_t half = (active.size() + 1) / 2;
    std::vector<std::size_t> candidates = pc.frozen.indices();
    if (candidates.size() < half) throw std::logic_error("partial colouring froze fewer than half the vertices");
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(pc.psi[a]) > std::abs(pc.psi[b]); });
    VertexSet keep(active.size(), true);
    for (std::size_t k = 0; k < half; ++k) {
      const std::size_t local = candidates[k];
      keep.reset(local);
      settled[active[local]] = pc.psi[local];
      inactive[active[local]] = 1;
    }

    Restriction next = restrict_to(pruned, keep);
    std::vector<std::size_t> next_active(next.original.size());
    std::vector<double> next_psi(next.original.size());
    for (std::size_t k = 0; k < next.original.size(); ++k) {
      next_active[k] = active[next.original[k]];
      next_psi[k] = pc.psi[next.original[k]];
    }
    active = std::move(next_active);
    prev_psi = std::move(next_psi);
    current = std::move(next.graph);
    result.trace.push_back(std::move(rt));
  }

  // Remaining active vertices keep their last fractional value for the
  // telescoping check, then take +1.
  for (std::size_t k = 0; k < active.size(); ++k) settled[active[k]] = prev_psi[k];
  for (std::size_t v = 0; v < big_n; ++v) {
    if (std::abs(telescoped[v] - settled[v]) > 1e-6) throw std::logic_error("telescoping identity violated");
  }
  result.post_active = active.size();

  std::vector<int> phi(big_n, 1);
  for (std::size_t v = 0; v < big_n; ++v) {
    if (inactive[v]) phi[v] = settled[v] >= 0.0 ? 1 : -1;
  }
  for (std::size_t e = 0; e < m; ++e) {
    double shift = 0.0;
    for (auto v : h.edge_vertices(e)) {
      if (inactive[v]) shift += phi[v] - settled[v];
    }
    if (std::abs(shift) > 1.0 + 1e-9) throw std::logic_error("rounding moved an edge sum by more than 1");
  }

  phi.resize(n);
  result.phi = Colouring(std::move(phi));
  result.disc = colouring_discrepancy(h, result.phi);
  return result;
}

std::vector<RoundReport> abort_event_stats(const std::vector<RoundTrace>& trace) {
  std::vector<RoundReport> out;
  out.reserve(trace.size());
  for (const auto& rt : trace) {
    RoundReport r;
    r.round_index = rt.round_index;
    r.phase = rt.phase;
    if (rt.phase == Phase::one) {
      r.count = rt.rows_above_threshold;
      r.threshold = static_cast<double>(rt.active_count) / 17.0;
    } else {
      r.count = rt.edges_after_pruning;
      r.threshold = static_cast<double>(rt.active_count) / 16.0;
    }
    r.good = static_cast<double>(r.count) <= r.threshold;
    out.push_back(r);
  }
  return out;
}

std::string trace_to_jsonl(const std::vector<RoundTrace>& trace) {
  std::string out;
  for (const auto& rt : trace) {
    nlohmann::ordered_json j;
    j["round_index"] = rt.round_index;
    j["phase"] = to_string(rt.phase);
    j["active_count"] = rt.active_count;
    j["edges_before_pruning"] = rt.edges_before_pruning;
    j["edges_after_pruning"] = rt.edges_after_pruning;
    j["rows_above_threshold"] = rt.rows_above_threshold;
    j["budget_ratio"] = rt.budget_ratio;
    j["aborted"] = rt.aborted;
    j["movement_max"] = rt.movement_max;
    j["frozen_count"] = rt.frozen_count;
    j["attempts"] = rt.attempts;
    j["walk_steps"] = rt.walk_steps;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace hyperdisc
