#include "hyperdisc/exact.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <vector>

#include "hyperdisc/error.hpp"

namespace hyperdisc {

namespace {

// Edge lists per vertex (CSR).
struct Incidence {
  std::vector<std::size_t> offset;
  std::vector<std::uint32_t> edges;

  explicit Incidence(const Hypergraph& h) : offset(h.num_vertices() + 1, 0) {
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
      for (auto v : h.edge_vertices(i)) ++offset[v + 1];
    }
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    edges.resize(offset.back());
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
      for (auto v : h.edge_vertices(i)) edges[fill[v]++] = static_cast<std::uint32_t>(i);
    }
  }

  std::span<const std::uint32_t> of(std::size_t v) const {
    return {edges.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

bool past(const std::optional<std::chrono::steady_clock::time_point>& deadline) {
  return deadline && std::chrono::steady_clock::now() > *deadline;
}

struct PartitionResult {
  long best = std::numeric_limits<long>::max();
  std::vector<int> witness;
  std::uint64_t nodes = 0;
  bool timed_out = false;
};

// Gray-code walk over vertices [1, 1 + free_bits) with the remaining vertices
// fixed by the partition index.
PartitionResult search_partition(const Hypergraph& h, const Incidence& inc, std::size_t free_bits,
                                 std::size_t part_bits, std::uint64_t part, long lower_bound,
                                 const std::atomic<std::uint64_t>& settled_below,
                                 const ExactOptions& options) {
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();
  PartitionResult out;

  std::vector<int> sign(n, 1);
  for (std::size_t b = 0; b < part_bits; ++b) {
    if ((part >> b) & 1u) sign[1 + free_bits + b] = -1;
  }
  std::vector<long> sum(m, 0);
  std::vector<std::uint64_t> hist(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto e : inc.of(v)) sum[e] += sign[v];
  }
  long cur = 0;
  for (std::size_t e = 0; e < m; ++e) {
    const long a = std::labs(sum[e]);
    ++hist[static_cast<std::size_t>(a)];
    cur = std::max(cur, a);
  }

  auto record = [&]() {
    if (cur < out.best) {
      out.best = cur;
      out.witness = sign;
    }
  };
  record();
  ++out.nodes;
  if (out.best <= lower_bound) return out;

  const std::uint64_t states = std::uint64_t{1} << free_bits;
  for (std::uint64_t t = 1; t < states; ++t) {
    if ((t & 0xFFFF) == 0) {
      if (settled_below.load(std::memory_order_relaxed) < part) return out;
      if (past(options.deadline)) {
        out.timed_out = true;
        return out;
      }
    }
    const std::size_t v = 1 + static_cast<std::size_t>(std::countr_zero(t));
    sign[v] = -sign[v];
    const long delta = 2 * sign[v];
    for (auto e : inc.of(v)) {
      --hist[static_cast<std::size_t>(std::labs(sum[e]))];
      sum[e] += delta;
      const long a = std::labs(sum[e]);
      ++hist[static_cast<std::size_t>(a)];
      if (a > cur) cur = a;
    }
    while (cur > 0 && hist[static_cast<std::size_t>(cur)] == 0) --cur;
    ++out.nodes;
    if (cur < out.best) {
      record();
      if (out.best <= lower_bound) return out;
    }
  }
  return out;
}

void validate_witness(const Hypergraph& h, const ExactResult& r) {
  if (colouring_discrepancy(h, r.witness) != r.disc) {
    throw std::logic_error("exact search witness does not attain the reported discrepancy");
  }
}

}  // namespace

long parity_lower_bound(const Hypergraph& h) { return has_odd_edge(h) ? 1 : 0; }

ExactResult disc_exact(const Hypergraph& h, const ExactOptions& options) {
  const std::size_t n = h.num_vertices();
  if (n > options.limit_n) {
    throw Error(errc::kInstanceTooLarge, "instance too large: n = " + std::to_string(n) +
                                             " exceeds limit_n = " + std::to_string(options.limit_n));
  }
  if (n > 62) throw Error(errc::kInstanceTooLarge, "instance too large for exhaustive search");
  if (n == 0) return ExactResult{0, Colouring{}, 1};

  const Incidence inc(h);
  const long lb = parity_lower_bound(h);
  const std::size_t part_bits = std::min(kExactPartitionBits, n - 1);
  const std::size_t free_bits = n - 1 - part_bits;
  const std::uint64_t parts = std::uint64_t{1} << part_bits;

  std::vector<PartitionResult> results(parts);
  // Lowest partition index that already reached the lower bound; partitions
  // with a larger index can no longer win and stop early.
  std::atomic<std::uint64_t> settled(parts);
  const int threads = options.threads;
  const auto nparts = static_cast<std::int64_t>(parts);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : omp_get_max_threads()) if (threads != 1)
  for (std::int64_t p = 0; p < nparts; ++p) {
    const auto part = static_cast<std::uint64_t>(p);
    if (settled.load() < part) continue;
    results[part] = search_partition(h, inc, free_bits, part_bits, part, lb, settled, options);
    if (results[part].best <= lb) {
      std::uint64_t cur = settled.load();
      while (part < cur && !settled.compare_exchange_weak(cur, part)) {
      }
    }
  }

  ExactResult best;
  best.disc = std::numeric_limits<long>::max();
  bool timed_out = false;
  for (std::uint64_t p = 0; p < parts; ++p) {
    best.nodes_explored += results[p].nodes;
    timed_out = timed_out || results[p].timed_out;
    if (p > settled.load()) continue;
    if (!results[p].witness.empty() && results[p].best < best.disc) {
      best.disc = results[p].best;
      best.witness = Colouring(results[p].witness);
    }
  }
  if (timed_out) throw Error(errc::kTimeout, "exact search exceeded its deadline");
  validate_witness(h, best);
  return best;
}

// ------------------------------------------------------------ branch & bound

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& h, const ExactOptions& options)
      : h_(h), inc_(h), options_(options), sum_(h.num_edges(), 0), rem_(h.num_edges(), 0),
        sign_(h.num_vertices(), 1) {
    const std::size_t n = h.num_vertices();
    const auto deg = degree_profile(h);
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return deg[a] > deg[b]; });
    for (std::size_t e = 0; e < h.num_edges(); ++e) rem_[e] = static_cast<long>(h.edge_size(e));
    lower_bound_ = parity_lower_bound(h);
  }

  // Greedy in search order: each vertex takes the sign minimising the
  // largest |partial sum| over its edges (ties +1).
  std::vector<int> greedy() const {
    std::vector<long> s(h_.num_edges(), 0);
    std::vector<int> sign(h_.num_vertices(), 1);
    for (std::size_t k = 0; k < order_.size(); ++k) {
      const std::size_t v = order_[k];
      long worst_plus = 0;
      long worst_minus = 0;
      for (auto e : inc_.of(v)) {
        worst_plus = std::max(worst_plus, std::labs(s[e] + 1));
        worst_minus = std::max(worst_minus, std::labs(s[e] - 1));
      }
      sign[v] = (k == 0 || worst_plus <= worst_minus) ? 1 : -1;
      for (auto e : inc_.of(v)) s[e] += sign[v];
    }
    return sign;
  }

  // Searches for a colouring with discrepancy < bound. Returns false if the
  // whole tree was exhausted without one.
  bool run(long bound) {
    best_ = bound;
    found_ = false;
    if (order_.empty()) {
      found_ = 0 < bound;
      best_ = 0;
      witness_.clear();
      return found_;
    }
    // First vertex in search order is fixed to +1 (global sign symmetry).
    assign(0, 1);
    if (!pruned_after(order_[0])) descend(1);
    unassign(0);
    return found_;
  }

  long best() const { return best_; }
  const std::vector<int>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }
  long lower_bound() const { return lower_bound_; }

 private:
  void assign(std::size_t pos, int s) {
    const std::size_t v = order_[pos];
    sign_[v] = s;
    for (auto e : inc_.of(v)) {
      sum_[e] += s;
      --rem_[e];
    }
    ++nodes_;
    if ((nodes_ & 0xFFF) == 0 && past(options_.deadline)) {
      throw Error(errc::kTimeout, "branch and bound exceeded its deadline");
    }
  }

  void unassign(std::size_t pos) {
    const std::size_t v = order_[pos];
    for (auto e : inc_.of(v)) {
      sum_[e] -= sign_[v];
      ++rem_[e];
    }
  }

  bool pruned_after(std::size_t v) const {
    for (auto e : inc_.of(v)) {
      if (std::labs(sum_[e]) - rem_[e] >= best_) return true;
    }
    return false;
  }

  bool done() const { return found_ && best_ <= lower_bound_; }

  void descend(std::size_t pos) {
    if (pos == order_.size()) {
      long d = 0;
      for (auto s : sum_) d = std::max(d, std::labs(s));
      if (d < best_) {
        best_ = d;
        witness_ = sign_;
        found_ = true;
      }
      return;
    }
    const std::size_t v = order_[pos];
    // Try the sign that keeps the touched edges smaller first.
    long bias = 0;
    for (auto e : inc_.of(v)) bias += sum_[e];
    const int first = bias > 0 ? -1 : 1;
    for (int s : {first, -first}) {
      assign(pos, s);
      if (!pruned_after(v)) descend(pos + 1);
      unassign(pos);
      if (done()) return;
    }
  }

  const Hypergraph& h_;
  Incidence inc_;
  const ExactOptions& options_;
  std::vector<std::size_t> order_;
  std::vector<long> sum_;
  std::vector<long> rem_;
  std::vector<int> sign_;
  std::vector<int> witness_;
  long best_ = 0;
  long lower_bound_ = 0;
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

ExactResult disc_branch_bound(const Hypergraph& h, std::optional<long> upper_hint, const ExactOptions& options) {
  BranchAndBound bb(h, options);
  ExactResult result;
  auto greedy = bb.greedy();
  Colouring greedy_colouring(greedy);
  const long greedy_disc = colouring_discrepancy(h, greedy_colouring);

  bool found = false;
  if (upper_hint && *upper_hint + 1 < greedy_disc) found = bb.run(*upper_hint + 1);
  if (!found && greedy_disc > bb.lower_bound()) found = bb.run(greedy_disc);

  if (found) {
    result.disc = bb.best();
    result.witness = Colouring(bb.witness());
  } else {
    result.disc = greedy_disc;
    result.witness = std::move(greedy_colouring);
  }
  result.nodes_explored = bb.nodes();
  validate_witness(h, result);
  return result;
}

}  // namespace hyperdisc
