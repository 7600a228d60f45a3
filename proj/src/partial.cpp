#include "hyperdisc/partial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hyperdisc/kernels.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

WalkFailed::WalkFailed(std::size_t attempts_, std::size_t best_frozen_, std::uint64_t total_steps_)
    : Error(errc::kWalkFailed, "partial colouring walk failed after " + std::to_string(attempts_) +
                                   " attempts (best frozen count " + std::to_string(best_frozen_) + ")"),
      attempts(attempts_),
      best_frozen(best_frozen_),
      total_steps(total_steps_) {}

double budget_ratio(std::size_t n, std::span<const double> lambda) {
  if (lambda.empty()) return 0.0;
  double s = 0.0;
  for (double l : lambda) s += std::exp(-l * l / 16.0);
  if (n == 0) return std::numeric_limits<double>::infinity();
  return s / (static_cast<double>(n) / 16.0);
}

double budget_check(const Hypergraph& h, std::span<const double> lambda) {
  if (lambda.size() != h.num_edges()) throw Error(errc::kLengthMismatch, "lambda length must equal m");
  return budget_ratio(h.num_vertices(), lambda);
}

namespace detail {

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace

bool TightProjector::add(std::span<const double> v) {
  std::vector<double> w(v.begin(), v.end());
  const double norm0 = std::sqrt(dot(w, w));
  if (norm0 == 0.0) return false;
  project(w);
  project(w);
  const double norm = std::sqrt(dot(w, w));
  if (norm <= 1e-9 * norm0) return false;
  for (double& x : w) x /= norm;
  basis_.insert(basis_.end(), w.begin(), w.end());
  return true;
}

void TightProjector::project(std::span<double> u) const {
  const std::size_t r = rank();
  for (std::size_t k = 0; k < r; ++k) {
    std::span<const double> q(basis_.data() + k * dim_, dim_);
    const double c = dot(q, u);
    for (std::size_t i = 0; i < dim_; ++i) u[i] -= c * q[i];
  }
}

}  // namespace detail

namespace {

struct Attempt {
  std::vector<double> x;
  std::size_t frozen = 0;
  WalkTelemetry telemetry;
};

class Walk {
 public:
  Walk(const PartialColouringRequest& req, double step, std::size_t max_steps)
      : req_(req), n_(req.h.num_vertices()), m_(req.h.num_edges()), step_(step), max_steps_(max_steps),
        bound_(m_), rows_(m_) {
    for (std::size_t e = 0; e < m_; ++e) {
      bound_[e] = req.lambda[e] * std::sqrt(static_cast<double>(req.h.edge_size(e)));
      rows_[e].assign(n_, 0.0);
      for (auto v : req.h.edge_vertices(e)) rows_[e][v] = 1.0;
    }
  }

  Attempt run(std::uint64_t stream) {
    auto rng = Xoshiro256::stream(req_.seed, stream);
    Attempt a;
    a.x = req_.rho.values();
    std::vector<double> w(m_, 0.0);
    std::vector<char> frozen(n_, 0);
    std::vector<char> tight(m_, 0);
    std::vector<std::size_t> tight_order;
    detail::TightProjector proj(n_);
    std::size_t free_count = n_;

    auto freeze_check = [&](std::size_t i) {
      if (!frozen[i] && std::abs(a.x[i]) >= 1.0 - req_.delta) {
        frozen[i] = 1;
        --free_count;
        return true;
      }
      return false;
    };
    auto tight_check = [&](std::size_t e) {
      if (!tight[e] && bound_[e] - std::abs(w[e]) <= 1e-12 + 1e-9 * bound_[e]) {
        tight[e] = 1;
        tight_order.push_back(e);
        return true;
      }
      return false;
    };
    std::vector<double> restricted(n_);
    auto add_row = [&](std::size_t e) {
      for (std::size_t i = 0; i < n_; ++i) restricted[i] = frozen[i] ? 0.0 : rows_[e][i];
      proj.add(restricted);
    };
    auto rebuild = [&]() {
      proj.clear();
      for (auto e : tight_order) add_row(e);
      ++a.telemetry.basis_rebuilds;
    };

    for (std::size_t i = 0; i < n_; ++i) freeze_check(i);
    for (std::size_t e = 0; e < m_; ++e) tight_check(e);
    rebuild();

    std::vector<double> u(n_);
    std::vector<double> du(m_);
    for (std::size_t s = 0; s < max_steps_ && proj.rank() < free_count; ++s) {
      for (std::size_t i = 0; i < n_; ++i) u[i] = frozen[i] ? 0.0 : rng.normal();
      proj.project(u);
      proj.project(u);
      for (std::size_t i = 0; i < n_; ++i) {
        if (frozen[i]) u[i] = 0.0;
      }
      double unorm = 0.0;
      for (double v : u) unorm += v * v;
      if (unorm < 1e-24) break;

      kernels::omp::edge_dot(req_.h, u, du);

      // Largest t <= step keeping every coordinate in [-1, 1] and every
      // loose edge within its budget.
      double t = step_;
      for (std::size_t i = 0; i < n_; ++i) {
        if (frozen[i] || u[i] == 0.0) continue;
        const double lim = u[i] > 0 ? (1.0 - a.x[i]) / u[i] : (-1.0 - a.x[i]) / u[i];
        t = std::min(t, std::max(lim, 0.0));
      }
      for (std::size_t e = 0; e < m_; ++e) {
        if (tight[e] || du[e] == 0.0) continue;
        const double lim = du[e] > 0 ? (bound_[e] - w[e]) / du[e] : (-bound_[e] - w[e]) / du[e];
        t = std::min(t, std::max(lim, 0.0));
      }

      for (std::size_t i = 0; i < n_; ++i) {
        if (!frozen[i]) a.x[i] = std::clamp(a.x[i] + t * u[i], -1.0, 1.0);
      }
      for (std::size_t e = 0; e < m_; ++e) w[e] += t * du[e];
      ++a.telemetry.steps;

      bool newly_frozen = false;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!frozen[i] && std::abs(a.x[i]) >= 1.0 - 1e-12) a.x[i] = a.x[i] > 0 ? 1.0 : -1.0;
        newly_frozen = freeze_check(i) || newly_frozen;
      }
      std::size_t first_new_tight = tight_order.size();
      for (std::size_t e = 0; e < m_; ++e) tight_check(e);
      if (newly_frozen) {
        rebuild();
      } else {
        for (std::size_t k = first_new_tight; k < tight_order.size(); ++k) add_row(tight_order[k]);
      }
    }

    for (std::size_t i = 0; i < n_; ++i) a.frozen += frozen[i] ? 1 : 0;
    a.telemetry.tight_edges = tight_order.size();
    a.telemetry.frozen = a.frozen;
    return a;
  }

  // Post-hoc check, independent of the walk's incremental bookkeeping.
  bool satisfies_postconditions(const std::vector<double>& x, std::size_t need) const {
    std::size_t frozen = 0;
    for (double v : x) {
      if (std::abs(v) > 1.0 + FractionalColouring::kRangeTolerance) return false;
      if (std::abs(v) >= 1.0 - req_.delta) ++frozen;
    }
    if (frozen < need) return false;
    for (std::size_t e = 0; e < m_; ++e) {
      double move = 0.0;
      for (auto v : req_.h.edge_vertices(e)) move += x[v] - req_.rho[v];
      if (std::abs(move) > bound_[e] + 1e-6) return false;
    }
    return true;
  }

 private:
  const PartialColouringRequest& req_;
  std::size_t n_, m_;
  double step_;
  std::size_t max_steps_;
  std::vector<double> bound_;
  std::vector<std::vector<double>> rows_;
};

VertexSet frozen_set(const std::vector<double>& x, double delta) {
  VertexSet s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) >= 1.0 - delta) s.set(i);
  }
  return s;
}

}  // namespace

PartialColouringResult partial_colour(const PartialColouringRequest& req) {
  const std::size_t n = req.h.num_vertices();
  if (req.rho.size() != n) throw Error(errc::kLengthMismatch, "rho length must equal n");
  if (req.lambda.size() != req.h.num_edges()) throw Error(errc::kLengthMismatch, "lambda length must equal m");
  if (!(req.delta > 0.0 && req.delta < 1.0)) throw Error(errc::kInvalidParameter, "delta must lie in (0, 1)");
  if (req.max_attempts == 0) throw Error(errc::kInvalidParameter, "max_attempts must be positive");
  for (double l : req.lambda) {
    if (!(l >= 0.0)) throw Error(errc::kInvalidParameter, "lambda entries must be non-negative");
  }

  PartialColouringResult result;
  result.budget_ratio = budget_check(req.h, req.lambda);
  if (req.enforce_budget && result.budget_ratio > 1.0) {
    throw Error(errc::kBudgetInfeasible, "budget infeasible: sum exp(-lambda^2/16) / (n/16) = " +
                                             std::to_string(result.budget_ratio));
  }

  const std::size_t need = (n + 1) / 2;
  const VertexSet rho_frozen = frozen_set(req.rho.values(), req.delta);
  if (rho_frozen.count() >= need) {
    result.psi = req.rho;
    result.frozen = rho_frozen;
    result.telemetry.frozen = rho_frozen.count();
    return result;
  }

  const double step = req.walk.step.value_or(0.05);
  if (!(step > 0.0)) throw Error(errc::kInvalidParameter, "walk step must be positive");
  const std::size_t max_steps = req.walk.max_steps.value_or(static_cast<std::size_t>(
      std::ceil(16.0 * (1.0 + std::log(static_cast<double>(n) + 1.0)) / (step * step))));

  Walk walk(req, step, max_steps);
  std::size_t best_frozen = 0;
  for (std::size_t attempt = 0; attempt < req.max_attempts; ++attempt) {
    Attempt a = walk.run(attempt);
    result.total_steps += a.telemetry.steps;
    best_frozen = std::max(best_frozen, a.frozen);
    if (a.frozen >= need && walk.satisfies_postconditions(a.x, need)) {
      result.frozen = frozen_set(a.x, req.delta);
      result.psi = FractionalColouring(std::move(a.x));
      result.attempts_used = attempt + 1;
      result.telemetry = a.telemetry;
      return result;
    }
  }
  throw WalkFailed(req.max_attempts, best_frozen, result.total_steps);
}

}  // namespace hyperdisc
