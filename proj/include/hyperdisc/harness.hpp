#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdisc/bounds.hpp"

namespace hyperdisc {

enum class Solver { exact, branch_bound, iterated, random_baseline };
Solver parse_solver(const std::string& s);
const char* to_string(Solver s);

struct SweepConfig {
  bounds::Model model = bounds::Model::edge_independent;
  std::vector<std::size_t> n_grid;
  std::vector<std::size_t> m_grid;
  std::vector<double> p_grid;        // edge-independent
  std::vector<std::size_t> d_grid;   // edge-dependent
  std::size_t seeds_per_point = 1;
  std::uint64_t seed_base = 0;
  Solver solver = Solver::exact;
  int threads = 0;                   // 0 = OpenMP default
  long timeout_ms = 60'000;
  std::size_t limit_n = 30;
  std::optional<double> beta;        // iterated solver only
  bool record_timing = false;        // wall_ms is 0 unless set

  void validate() const;
};

inline constexpr int kCsvSchemaVersion = 1;

struct ExperimentRecord {
  int schema_version = kCsvSchemaVersion;
  std::string model;   // "ind" | "dep"
  std::size_t n = 0;
  std::size_t m = 0;
  double p = 0.0;      // d/m for the edge-dependent model
  std::size_t d = 0;   // 0 for the edge-independent model
  std::size_t point = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string solver;
  long measured_disc = -1;  // -1 when aborted or timed out
  bool aborted = false;
  bool timed_out = false;
  bool odd_edge_present = false;
  double lower_curve = 0.0;
  double upper_curve = 0.0;  // NaN when m <= n or mu < 1
  std::uint64_t telemetry = 0;  // nodes explored (exact) / walk steps (iterated)
  long wall_ms = 0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&);
};

// One record per (grid point x seed), in canonical (point, trial) order.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg);

// A single (point, trial) cell; exposed so callers can reproduce one record.
ExperimentRecord run_instance(const SweepConfig& cfg, std::size_t n, std::size_t m, double p_or_d,
                              std::size_t point, std::size_t trial);

std::string csv_header();
std::string to_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> parse_csv(const std::string& text);

// sqrt(mu ln(m/n) beta), beta the least value >= 1 meeting the dense-regime
// condition for this mu; NaN when m <= n.
double upper_curve_for_mu(std::size_t n, std::size_t m, double mu);

}  // namespace hyperdisc
