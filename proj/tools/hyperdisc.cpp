// hyperdisc command line: gen, exact, colour, bounds, sweep, verify.
// Failures print {"error": <code>, "message": ...} on stderr and exit nonzero.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdisc/bounds.hpp"
#include "hyperdisc/error.hpp"
#include "hyperdisc/exact.hpp"
#include "hyperdisc/harness.hpp"
#include "hyperdisc/hypergraph.hpp"
#include "hyperdisc/iterated.hpp"
#include "hyperdisc/kernels.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/verify.hpp"

using namespace hyperdisc;
using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(errc::kIo, "cannot open '" + c.out + "' for writing");
  f << text;
  if (!f) throw Error(errc::kIo, "write to '" + c.out + "' failed");
}

void apply_threads(int threads) {
  kernels::set_threads(threads);
  if (threads > 0) omp_set_num_threads(threads);
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "a,b,c" or "lo:hi[:step]"
template <class T>
std::vector<T> parse_grid(const std::string& spec, const char* what) {
  std::vector<T> out;
  if (spec.empty()) return out;
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<double> parts;
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
      if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range");
      const double step = parts.size() == 3 ? parts[2] : 1.0;
      if (!(step > 0)) throw std::invalid_argument("step");
      for (double v = parts[0]; v <= parts[1] + 1e-9 * step; v += step) out.push_back(static_cast<T>(v));
    } else {
      std::stringstream ss(spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(static_cast<T>(std::stod(tok)));
    }
  } catch (const std::logic_error&) {
    throw Error(errc::kInvalidParameter, std::string("cannot parse ") + what + " grid '" + spec + "'");
  }
  return out;
}

std::map<std::string, std::string> parse_params(const std::string& s) {
  std::map<std::string, std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(errc::kInvalidParameter, "expected k=v, got '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

class Params {
 public:
  explicit Params(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  double real(const std::string& k) const {
    const auto& v = raw(k);
    try {
      std::size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::logic_error&) {
      throw Error(errc::kInvalidParameter, "parameter '" + k + "' is not a number: '" + v + "'");
    }
  }
  double real(const std::string& k, double fallback) const { return kv_.count(k) ? real(k) : fallback; }
  std::size_t count(const std::string& k) const {
    const double x = real(k);
    if (x < 0 || x != std::floor(x)) throw Error(errc::kInvalidParameter, "parameter '" + k + "' must be a non-negative integer");
    return static_cast<std::size_t>(x);
  }
  const std::string& raw(const std::string& k) const {
    auto it = kv_.find(k);
    if (it == kv_.end()) throw Error(errc::kInvalidParameter, "missing parameter '" + k + "'");
    return it->second;
  }

 private:
  std::map<std::string, std::string> kv_;
};

bounds::BoundParams bound_params(const Params& p) {
  bounds::BoundParams bp;
  bp.n = p.count("n");
  bp.p = p.real("p");
  bp.eps = p.real("eps", 0.0);
  bp.zeta = p.real("zeta", bp.p);
  bp.c_uni = p.real("c_uni", bounds::kUniversalConstant);
  return bp;
}

double evaluate_formula(const std::string& name, const Params& p) {
  using namespace bounds;
  if (name == "interval_rough") return interval_bound_rough(bound_params(p), p.real("L"), p.real("R"));
  if (name == "interval_tight") return interval_bound_tight(bound_params(p), p.real("L"), p.real("R"));
  if (name == "interval_sigma") {
    return interval_bound_sigma(p.real("sigma"), p.real("L"), p.real("R"), p.real("c_uni", kUniversalConstant));
  }
  if (name == "parity_even") return parity_even_probability(p.count("n"), p.real("p"));
  if (name == "dependent_parity_pair") return dependent_parity_pair_probability(p.count("n"), p.count("m"), p.count("d"));
  if (name == "hypergeometric_tail") {
    return hypergeometric_tail_bound(p.count("m"), p.count("d"), p.count("j"), p.real("lambda"));
  }
  if (name == "history_failure") {
    return history_failure_bound(p.count("m"), p.count("d"), p.real("alpha"), p.real("lambda"), p.real("xi"));
  }
  if (name == "first_moment_scale") {
    return first_moment_scale(p.count("n"), p.count("m"), p.real("p"), parse_regime(p.raw("regime")));
  }
  if (name == "first_moment_log") {
    return first_moment_log_expected_count(p.count("n"), p.count("m"), p.real("p"), p.real("kappa"),
                                           parse_regime(p.raw("regime")), p.real("c_uni", kUniversalConstant));
  }
  if (name == "lower_curve") {
    const Model model = parse_model(p.raw("model"));
    const double v = model == Model::edge_independent ? p.real("p") : p.real("d");
    return lower_bound_curve(p.count("n"), p.count("m"), v, model);
  }
  if (name == "upper_curve") return upper_bound_curve(p.count("n"), p.count("m"), p.count("d"));
  if (name == "beta") return compute_beta(p.count("n"), p.count("m"), p.count("d"));
  throw Error(errc::kInvalidParameter, "unknown formula '" + name + "'");
}

const char* kFormulas =
    "interval_rough, interval_tight, interval_sigma, parity_even, dependent_parity_pair, hypergeometric_tail, "
    "history_failure, first_moment_scale, first_moment_log, lower_curve, upper_curve, beta";

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--seed", c.seed, with_seed ? "Random seed" : "Accepted for uniformity; output does not depend on it");
  sub->add_option("--threads", c.threads, "Worker threads (0 = OpenMP default)");
  sub->add_option("--out", c.out, "Output file (default stdout)");
}

int fail(const std::string& code, const std::string& message, int status) {
  json j;
  j["error"] = code;
  j["message"] = message;
  std::cerr << j.dump() << '\n';
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrepancy toolkit for random hypergraphs"};
  app.require_subcommand(1);

  // gen
  Common gen_c;
  std::string gen_model = "ind";
  std::size_t gen_n = 0, gen_m = 0, gen_d = 0;
  double gen_p = 0.5;
  auto* gen = app.add_subcommand("gen", "Sample a random hypergraph and write it as HDG");
  add_common(gen, gen_c, true);
  gen->add_option("--model", gen_model, "ind | dep")->check(CLI::IsMember({"ind", "dep"}));
  gen->add_option("--n", gen_n, "Vertices")->required();
  gen->add_option("--m", gen_m, "Edges")->required();
  gen->add_option("--p", gen_p, "Edge probability (ind)");
  gen->add_option("--d", gen_d, "Vertex degree (dep)");

  // exact
  Common ex_c;
  std::string ex_in, ex_solver = "exact";
  std::size_t ex_limit = 30;
  long ex_timeout = 0;
  bool ex_json = false;
  auto* ex = app.add_subcommand("exact", "Exact discrepancy of a small hypergraph");
  add_common(ex, ex_c, false);
  ex->add_option("--in", ex_in, "Input HDG file")->required();
  ex->add_option("--solver", ex_solver, "exact | branch_bound")->check(CLI::IsMember({"exact", "branch_bound"}));
  ex->add_option("--limit-n", ex_limit, "Refuse instances with more vertices");
  ex->add_option("--timeout-ms", ex_timeout, "Give up after this many milliseconds (0 = never)");
  ex->add_flag("--json", ex_json, "JSON output");

  // colour
  Common co_c;
  std::string co_in, co_trace;
  std::size_t co_d = 0;
  std::optional<double> co_beta;
  std::size_t co_attempts = 100;
  bool co_json = false;
  auto* co = app.add_subcommand("colour", "Run the iterated partial-colouring algorithm");
  add_common(co, co_c, true);
  co->add_option("--in", co_in, "Input HDG file")->required();
  co->add_option("--d", co_d, "Vertex degree used by the schedule")->required();
  co->add_option("--beta", co_beta, "Override beta (>= 1)");
  co->add_option("--trace", co_trace, "Write one JSON object per round to this file");
  co->add_option("--max-attempts", co_attempts, "Walk attempts per round");
  co->add_flag("--json", co_json, "JSON output");

  // bounds
  Common bo_c;
  std::string bo_formula, bo_params;
  bool bo_json = false;
  auto* bo = app.add_subcommand("bounds", "Evaluate a closed-form bound");
  add_common(bo, bo_c, false);
  bo->add_option("--formula", bo_formula, std::string("One of: ") + kFormulas)->required();
  bo->add_option("--params", bo_params, "Comma separated k=v pairs");
  bo->add_flag("--json", bo_json, "JSON output");

  // sweep
  Common sw_c;
  std::string sw_model = "ind", sw_solver = "exact", sw_n, sw_m, sw_p, sw_d;
  std::size_t sw_seeds = 1, sw_limit = 30;
  long sw_timeout = 60'000;
  std::optional<double> sw_beta;
  bool sw_timing = false;
  auto* sw = app.add_subcommand("sweep", "Seeded parameter sweep, CSV output");
  add_common(sw, sw_c, true);
  sw->add_option("--model", sw_model, "ind | dep")->check(CLI::IsMember({"ind", "dep"}));
  sw->add_option("--solver", sw_solver, "exact | branch_bound | iterated | random_baseline");
  sw->add_option("--n", sw_n, "n grid: a,b,c or lo:hi[:step]")->required();
  sw->add_option("--m", sw_m, "m grid")->required();
  sw->add_option("--p", sw_p, "p grid (ind)");
  sw->add_option("--d", sw_d, "d grid (dep)");
  sw->add_option("--seeds", sw_seeds, "Seeds per grid point");
  sw->add_option("--timeout-ms", sw_timeout, "Per-instance timeout in milliseconds (default 60000)");
  sw->add_option("--limit-n", sw_limit, "Largest n for the exact solver");
  sw->add_option("--beta", sw_beta, "Override beta for the iterated solver");
  sw->add_flag("--timing", sw_timing, "Record wall_ms (makes output run dependent)");

  // verify
  Common ve_c;
  std::string ve_scale = "smoke";
  bool ve_timing = false;
  auto* ve = app.add_subcommand("verify", "Run the empirical cross-checks");
  add_common(ve, ve_c, true);
  ve->add_option("--scale", ve_scale, "smoke | full")->check(CLI::IsMember({"smoke", "full"}));
  ve->add_flag("--timing", ve_timing, "Include per-check seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 64);
  }

  try {
    if (*gen) {
      apply_threads(gen_c.threads);
      ModelParams mp;
      mp.n = gen_n;
      mp.m = gen_m;
      mp.seed = gen_c.seed;
      if (gen_model == "ind") {
        mp.kind = EdgeIndependent{gen_p};
      } else {
        if (gen->count("--d") == 0) throw Error(errc::kInvalidParameter, "--model dep requires --d");
        mp.kind = EdgeDependent{gen_d};
      }
      emit(gen_c, to_hdg(generate(mp)));
    } else if (*ex) {
      apply_threads(ex_c.threads);
      const Hypergraph h = load_hdg(ex_in);
      ExactOptions eo;
      eo.limit_n = ex_limit;
      eo.threads = ex_c.threads;
      if (ex_timeout > 0) eo.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ex_timeout);
      const ExactResult r = ex_solver == "exact" ? disc_exact(h, eo) : disc_branch_bound(h, std::nullopt, eo);
      if (ex_json) {
        json j;
        j["disc"] = r.disc;
        j["witness"] = r.witness.to_string();
        j["nodes_explored"] = r.nodes_explored;
        emit(ex_c, j.dump() + "\n");
      } else {
        emit(ex_c, "disc=" + std::to_string(r.disc) + "\n" + r.witness.to_string() + "\n");
      }
    } else if (*co) {
      apply_threads(co_c.threads);
      const Hypergraph h = load_hdg(co_in);
      const Schedule s = make_schedule(h.num_vertices(), h.num_edges(), co_d, co_beta);
      IteratedOptions io;
      io.max_attempts = co_attempts;
      IteratedResult r;
      try {
        r = run_iterated(h, s, co_c.seed, io);
      } catch (const RoundAborted& e) {
        if (!co_trace.empty()) {
          std::ofstream f(co_trace, std::ios::binary);
          f << trace_to_jsonl(e.trace);
        }
        throw;
      }
      if (!co_trace.empty()) {
        std::ofstream f(co_trace, std::ios::binary);
        if (!f) throw Error(errc::kIo, "cannot open '" + co_trace + "' for writing");
        f << trace_to_jsonl(r.trace);
      }
      if (co_json) {
        json j;
        j["disc"] = r.disc;
        j["f_hat"] = s.f_hat;
        j["beta"] = s.beta;
        j["t1"] = s.t1;
        j["t2"] = s.t2;
        j["rounds"] = r.trace.size();
        j["post_active"] = r.post_active;
        j["colouring"] = r.phi.to_string();
        emit(co_c, j.dump() + "\n");
      } else {
        emit(co_c, "disc=" + std::to_string(r.disc) + "\nf_hat=" + num(s.f_hat) + "\n" + r.phi.to_string() + "\n");
      }
    } else if (*bo) {
      const auto kv = parse_params(bo_params);
      const double v = evaluate_formula(bo_formula, Params(kv));
      if (bo_json) {
        json j;
        j["formula"] = bo_formula;
        json params = json::object();
        for (const auto& [k, val] : kv) params[k] = val;
        j["params"] = params;
        j["value"] = v;
        emit(bo_c, j.dump() + "\n");
      } else {
        emit(bo_c, num(v) + "\n");
      }
    } else if (*sw) {
      SweepConfig cfg;
      cfg.model = bounds::parse_model(sw_model);
      cfg.solver = parse_solver(sw_solver);
      cfg.n_grid = parse_grid<std::size_t>(sw_n, "n");
      cfg.m_grid = parse_grid<std::size_t>(sw_m, "m");
      cfg.p_grid = parse_grid<double>(sw_p, "p");
      cfg.d_grid = parse_grid<std::size_t>(sw_d, "d");
      cfg.seeds_per_point = sw_seeds;
      cfg.seed_base = sw_c.seed;
      cfg.threads = sw_c.threads;
      cfg.timeout_ms = sw_timeout;
      cfg.limit_n = sw_limit;
      cfg.beta = sw_beta;
      cfg.record_timing = sw_timing;
      apply_threads(sw_c.threads);
      emit(sw_c, to_csv(run_sweep(cfg)));
    } else if (*ve) {
      apply_threads(ve_c.threads);
      const VerifyReport rep = verify_suite(ve_c.seed, parse_scale(ve_scale));
      emit(ve_c, rep.to_json(ve_timing) + "\n");
    }
  } catch (const Error& e) {
    return fail(e.code(), e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 70);
  }
  return 0;
}
