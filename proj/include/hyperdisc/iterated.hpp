#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdisc/error.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/partial.hpp"

namespace hyperdisc {

// Parameters of the two-phase iterated colouring.
//   mu    = d n / m            (mean edge size)
//   f_hat = sqrt(mu ln(m/n) beta)
//   t1    = floor(lg mu),  t2 = floor(lg(10 n / f_hat)) + 1,  delta = 1/n
// Round i targets f_hat / (i + 2)^2. If t2 <= t1 phase two is empty.
struct Schedule {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  double mu = 0.0;
  double beta = 1.0;
  double f_hat = 0.0;
  int t1 = 0;
  int t2 = 0;
  double delta = 0.0;

  double round_target(int i) const { return f_hat / ((i + 2.0) * (i + 2.0)); }
  // Row-size threshold beta mu / (16 (i+2)^5) of the "good round" test.
  double good_round_threshold(int i) const;
  int last_round() const { return t2 > t1 ? t2 : t1; }
};

// Least beta >= 1 with beta mu >= ln(m/n) (ln mu + 2)^5.
double compute_beta(std::size_t n, std::size_t m, std::size_t d);
// True iff beta mu >= ln(m/n) (ln mu + 2)^5.
bool beta_condition_holds(std::size_t n, std::size_t m, std::size_t d, double beta);

Schedule make_schedule(std::size_t n, std::size_t m, std::size_t d,
                       std::optional<double> beta_override = std::nullopt);

enum class Phase { one, two, post };
const char* to_string(Phase p);

struct RoundTrace {
  int round_index = 0;
  Phase phase = Phase::one;
  std::size_t active_count = 0;
  std::size_t edges_before_pruning = 0;
  std::size_t edges_after_pruning = 0;
  // Rows of the round hypergraph (before pruning) with size > threshold,
  // threshold = good_round_threshold(i) in phase one, f_hat in phase two.
  std::size_t rows_above_threshold = 0;
  double budget_ratio = 0.0;
  bool aborted = false;
  double movement_max = 0.0;
  std::size_t frozen_count = 0;
  std::size_t attempts = 0;
  std::uint64_t walk_steps = 0;
  // Round hypergraph before pruning; kept only with IteratedOptions::keep_round_graphs.
  std::optional<Hypergraph> graph;
};

struct IteratedOptions {
  std::size_t max_attempts = 100;
  WalkParams walk;
  // Phase-two movement budget per edge is phase_two_lambda * sqrt(|e|).
  double phase_two_lambda = 1e-6;
  bool keep_round_graphs = false;
};

struct IteratedResult {
  Colouring phi;
  long disc = 0;
  std::vector<RoundTrace> trace;
  Schedule schedule;
  std::size_t padded_n = 0;
  std::size_t post_active = 0;  // vertices assigned +1 in post-processing
};

class RoundAborted : public Error {
 public:
  RoundAborted(const RoundTrace& round, std::vector<RoundTrace> trace_so_far);
  std::vector<RoundTrace> trace;
};

IteratedResult run_iterated(const Hypergraph& h, const Schedule& schedule, std::uint64_t seed,
                            const IteratedOptions& options = {});

struct RoundReport {
  int round_index = 0;
  Phase phase = Phase::one;
  std::size_t count = 0;     // rows above s_i (phase one) / surviving edges (phase two)
  double threshold = 0.0;    // n_i / 17 (phase one) / n_i / 16 (phase two)
  bool good = true;
};

std::vector<RoundReport> abort_event_stats(const std::vector<RoundTrace>& trace);

// One JSON object per line, one line per round.
std::string trace_to_jsonl(const std::vector<RoundTrace>& trace);

}  // namespace hyperdisc
