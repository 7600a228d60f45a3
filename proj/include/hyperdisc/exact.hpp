#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc {

struct ExactResult {
  long disc = 0;
  Colouring witness;
  std::uint64_t nodes_explored = 0;
};

struct ExactOptions {
  std::size_t limit_n = 30;
  // Worker threads for the partitioned Gray-code search; 0 = OpenMP default.
  // The partition count does not depend on this, so results never do either.
  int threads = 1;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// The search space (vertex 0 fixed to +1) is split into 2^k partitions by
// fixing the k highest-indexed vertices, k = min(kExactPartitionBits, n - 1).
inline constexpr std::size_t kExactPartitionBits = 4;

// Exhaustive minimum over all colourings via binary-reflected Gray code with
// incremental edge sums. Ties: first optimum in (partition, Gray) order.
// Stops early once the parity lower bound is attained.
ExactResult disc_exact(const Hypergraph& h, const ExactOptions& options = {});

// Same contract as disc_exact; depth-first search over vertices in
// decreasing-degree order, pruning a branch once some edge satisfies
// |partial sum| - unassigned >= best.
ExactResult disc_branch_bound(const Hypergraph& h, std::optional<long> upper_hint = std::nullopt,
                              const ExactOptions& options = {});

// 1 if some edge has odd size, else 0.
long parity_lower_bound(const Hypergraph& h);

}  // namespace hyperdisc
