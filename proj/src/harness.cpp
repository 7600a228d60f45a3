#include "hyperdisc/harness.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>

#include "hyperdisc/error.hpp"
#include "hyperdisc/exact.hpp"
#include "hyperdisc/iterated.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

Solver parse_solver(const std::string& s) {
  if (s == "exact") return Solver::exact;
  if (s == "branch_bound" || s == "bb") return Solver::branch_bound;
  if (s == "iterated") return Solver::iterated;
  if (s == "random_baseline" || s == "random") return Solver::random_baseline;
  throw Error(errc::kInvalidParameter, "unknown solver '" + s + "'");
}

const char* to_string(Solver s) {
  switch (s) {
    case Solver::exact:
      return "exact";
    case Solver::branch_bound:
      return "branch_bound";
    case Solver::iterated:
      return "iterated";
    case Solver::random_baseline:
      return "random_baseline";
  }
  return "?";
}

void SweepConfig::validate() const {
  const bool ind = model == bounds::Model::edge_independent;
  for (auto n : n_grid) {
    if (n == 0) throw Error(errc::kInvalidParameter, "n grid entries must be positive");
    if (solver == Solver::exact && n > limit_n) {
      throw Error(errc::kInvalidParameter, "exact solver requires n <= limit_n (" + std::to_string(limit_n) + ")");
    }
  }
  for (auto m : m_grid) {
    if (m == 0) throw Error(errc::kInvalidParameter, "m grid entries must be positive");
    for (auto n : n_grid) {
      if (solver == Solver::iterated && m <= n) throw Error(errc::kInvalidParameter, "iterated solver requires m > n");
    }
  }
  if (ind) {
    for (double p : p_grid) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::kInvalidParameter, "p grid entries must lie in [0, 1]");
    }
  } else {
    for (auto d : d_grid) {
      for (auto m : m_grid) {
        if (d < 1 || d > m) throw Error(errc::kInvalidParameter, "d grid entries must satisfy 1 <= d <= m");
      }
    }
  }
  if (timeout_ms <= 0) throw Error(errc::kInvalidParameter, "timeout must be positive");
}

double upper_curve_for_mu(std::size_t n, std::size_t m, double mu) {
  if (m <= n || mu < 1.0) return std::nan("");
  const double log_ratio = std::log(static_cast<double>(m) / static_cast<double>(n));
  const double beta = std::max(1.0, log_ratio * std::pow(std::log(mu) + 2.0, 5) / mu);
  return std::sqrt(mu * log_ratio * beta);
}

ExperimentRecord run_instance(const SweepConfig& cfg, std::size_t n, std::size_t m, double p_or_d,
                              std::size_t point, std::size_t trial) {
  const bool ind = cfg.model == bounds::Model::edge_independent;
  ExperimentRecord r;
  r.model = ind ? "ind" : "dep";
  r.n = n;
  r.m = m;
  r.point = point;
  r.trial = trial;
  r.seed = derive_seed(cfg.seed_base, point, trial);
  r.solver = to_string(cfg.solver);

  ModelParams params;
  params.n = n;
  params.m = m;
  params.seed = r.seed;
  if (ind) {
    r.p = p_or_d;
    params.kind = EdgeIndependent{p_or_d};
  } else {
    r.d = static_cast<std::size_t>(p_or_d);
    r.p = static_cast<double>(r.d) / static_cast<double>(m);
    params.kind = EdgeDependent{r.d};
  }
  const double mu = r.p * static_cast<double>(n);
  r.lower_curve = bounds::lower_bound_curve(n, m, p_or_d, cfg.model);
  r.upper_curve = upper_curve_for_mu(n, m, mu);

  const Hypergraph h = generate(params);
  r.odd_edge_present = has_odd_edge(h);

  const auto start = std::chrono::steady_clock::now();
  ExactOptions eo;
  eo.limit_n = cfg.limit_n;
  eo.threads = 1;
  eo.deadline = start + std::chrono::milliseconds(cfg.timeout_ms);
  try {
    switch (cfg.solver) {
      case Solver::exact: {
        const auto res = disc_exact(h, eo);
        r.measured_disc = res.disc;
        r.telemetry = res.nodes_explored;
        break;
      }
      case Solver::branch_bound: {
        const auto res = disc_branch_bound(h, std::nullopt, eo);
        r.measured_disc = res.disc;
        r.telemetry = res.nodes_explored;
        break;
      }
      case Solver::iterated: {
        const std::size_t d = ind ? std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(r.p * m))) : r.d;
        const Schedule s = make_schedule(n, m, d, cfg.beta);
        const auto res = run_iterated(h, s, r.seed);
        r.measured_disc = res.disc;
        for (const auto& rt : res.trace) r.telemetry += rt.walk_steps;
        break;
      }
      case Solver::random_baseline: {
        auto rng = Xoshiro256::stream(r.seed, 0xC010);
        std::vector<int> v(n);
        for (auto& x : v) x = (rng.next() >> 63) ? 1 : -1;
        r.measured_disc = colouring_discrepancy(h, Colouring(std::move(v)));
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() == errc::kTimeout) {
      r.timed_out = true;
    } else if (e.code() == errc::kRoundAborted || e.code() == errc::kWalkFailed ||
               e.code() == errc::kScheduleUndefined) {
      r.aborted = true;
    } else {
      throw;
    }
    r.measured_disc = -1;
  }
  if (cfg.record_timing) {
    r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  struct Cell {
    std::size_t n, m;
    double param;
  };
  std::vector<Cell> points;
  const bool ind = cfg.model == bounds::Model::edge_independent;
  for (auto n : cfg.n_grid) {
    for (auto m : cfg.m_grid) {
      if (ind) {
        for (double p : cfg.p_grid) points.push_back({n, m, p});
      } else {
        for (auto d : cfg.d_grid) points.push_back({n, m, static_cast<double>(d)});
      }
    }
  }
  const std::size_t total = points.size() * cfg.seeds_per_point;
  std::vector<ExperimentRecord> records(total);
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(total);
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const std::size_t point = idx / cfg.seeds_per_point;
    const std::size_t trial = idx % cfg.seeds_per_point;
    try {
      const auto& c = points[point];
      records[idx] = run_instance(cfg, c.n, c.m, c.param, point, trial);
    } catch (...) {
#pragma omp critical(hyperdisc_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

// --------------------------------------------------------------------- CSV

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

}  // namespace

bool operator==(const ExperimentRecord& a, const ExperimentRecord& b) {
  return a.schema_version == b.schema_version && a.model == b.model && a.n == b.n && a.m == b.m &&
         same_double(a.p, b.p) && a.d == b.d && a.point == b.point && a.trial == b.trial && a.seed == b.seed &&
         a.solver == b.solver && a.measured_disc == b.measured_disc && a.aborted == b.aborted &&
         a.timed_out == b.timed_out && a.odd_edge_present == b.odd_edge_present &&
         same_double(a.lower_curve, b.lower_curve) && same_double(a.upper_curve, b.upper_curve) &&
         a.telemetry == b.telemetry && a.wall_ms == b.wall_ms;
}

std::string csv_header() {
  return "schema_version,model,n,m,p,d,point,trial,seed,solver,measured_disc,aborted,timed_out,"
         "odd_edge_present,lower_curve,upper_curve,telemetry,wall_ms";
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& r : records) {
    os << r.schema_version << ',' << r.model << ',' << r.n << ',' << r.m << ',' << fmt_double(r.p) << ',' << r.d
       << ',' << r.point << ',' << r.trial << ',' << r.seed << ',' << r.solver << ',' << r.measured_disc << ','
       << int(r.aborted) << ',' << int(r.timed_out) << ',' << int(r.odd_edge_present) << ','
       << fmt_double(r.lower_curve) << ',' << fmt_double(r.upper_curve) << ',' << r.telemetry << ',' << r.wall_ms
       << '\n';
  }
  return os.str();
}

std::vector<ExperimentRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw Error(errc::kParse, "CSV: unexpected header");
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 18) throw Error(errc::kParse, "CSV: expected 18 fields, got " + std::to_string(f.size()));
    try {
      ExperimentRecord r;
      r.schema_version = std::stoi(f[0]);
      if (r.schema_version != kCsvSchemaVersion) throw Error(errc::kParse, "CSV: unsupported schema version");
      r.model = f[1];
      r.n = std::stoull(f[2]);
      r.m = std::stoull(f[3]);
      r.p = std::stod(f[4]);
      r.d = std::stoull(f[5]);
      r.point = std::stoull(f[6]);
      r.trial = std::stoull(f[7]);
      r.seed = std::stoull(f[8]);
      r.solver = f[9];
      r.measured_disc = std::stol(f[10]);
      r.aborted = f[11] == "1";
      r.timed_out = f[12] == "1";
      r.odd_edge_present = f[13] == "1";
      r.lower_curve = std::stod(f[14]);
      r.upper_curve = std::stod(f[15]);
      r.telemetry = std::stoull(f[16]);
      r.wall_ms = std::stol(f[17]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(errc::kParse, "CSV: malformed row: " + line);
    }
  }
  return out;
}

}  // namespace hyperdisc
