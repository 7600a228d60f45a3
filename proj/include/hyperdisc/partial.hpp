#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hyperdisc/error.hpp"
#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc {

// Walk step size and per-attempt step budget. Defaults: step 0.05 and
// ceil(16 (1 + ln(n + 1)) / step^2) steps.
struct WalkParams {
  std::optional<double> step;
  std::optional<std::size_t> max_steps;
};

struct PartialColouringRequest {
  Hypergraph h;
  FractionalColouring rho;      // target colouring
  std::vector<double> lambda;   // per-edge movement budgets, length m
  double delta = 0.1;           // rounding parameter
  std::uint64_t seed = 0;
  std::size_t max_attempts = 100;
  WalkParams walk;
  // When false the sum_e exp(-lambda_e^2 / 16) <= n / 16 precondition is
  // only recorded, not enforced (the caller has checked it or opts out).
  bool enforce_budget = true;
};

struct WalkTelemetry {
  std::uint64_t steps = 0;
  std::size_t tight_edges = 0;
  std::size_t basis_rebuilds = 0;
  std::size_t frozen = 0;
};

struct PartialColouringResult {
  FractionalColouring psi;
  VertexSet frozen;  // |psi(v)| >= 1 - delta
  std::size_t attempts_used = 0;
  double budget_ratio = 0.0;
  WalkTelemetry telemetry;          // successful attempt
  std::uint64_t total_steps = 0;    // over all attempts
};

class WalkFailed : public Error {
 public:
  WalkFailed(std::size_t attempts, std::size_t best_frozen, std::uint64_t total_steps);
  std::size_t attempts;
  std::size_t best_frozen;
  std::uint64_t total_steps;
};

// (sum_e exp(-lambda_e^2 / 16)) / (n / 16); feasible iff <= 1. Zero when m = 0.
double budget_check(const Hypergraph& h, std::span<const double> lambda);
// Same ratio with an explicit vertex count (used with padded vertex sets).
double budget_ratio(std::size_t n, std::span<const double> lambda);

// Randomised constrained walk from rho: Gaussian steps projected orthogonally
// to frozen coordinates and to tight edge rows, clipped so that no coordinate
// leaves the cube and no edge exceeds lambda_e sqrt(|e|). Runs until no free
// direction remains or the step budget is spent; an attempt succeeds when at
// least ceil(n / 2) coordinates are frozen. Retries with fresh streams.
PartialColouringResult partial_colour(const PartialColouringRequest& req);

namespace detail {

// Orthonormal basis of a growing set of constraint vectors (classical
// Gram-Schmidt, applied twice). Coordinates outside `free` are ignored.
class TightProjector {
 public:
  explicit TightProjector(std::size_t dim) : dim_(dim) {}

  // Returns true if v added a new direction.
  bool add(std::span<const double> v);
  void clear() { basis_.clear(); }
  std::size_t rank() const { return basis_.size() / dim_; }
  // u <- u - Q Q^T u
  void project(std::span<double> u) const;

 private:
  std::size_t dim_;
  std::vector<double> basis_;  // rank x dim, row-major
};

}  // namespace detail

}  // namespace hyperdisc
