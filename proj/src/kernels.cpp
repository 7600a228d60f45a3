#include "hyperdisc/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>

namespace hyperdisc::kernels {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int k) {
  if (k <= 0) k = omp_get_num_procs();
  omp_set_num_threads(k);
}

namespace {

inline long row_abs_sum(const Hypergraph& h, std::size_t i, std::span<const std::uint64_t> pos) {
  const auto row = h.row(i);
  long plus = 0;
  long total = 0;
  for (std::size_t w = 0; w < row.size(); ++w) {
    plus += std::popcount(row[w] & pos[w]);
    total += std::popcount(row[w]);
  }
  return std::labs(2 * plus - total);
}

inline double row_dot(const Hypergraph& h, std::size_t i, std::span<const double> x) {
  const auto row = h.row(i);
  double s = 0.0;
  for (std::size_t w = 0; w < row.size(); ++w) {
    std::uint64_t bits = row[w];
    const std::size_t base = w * kWordBits;
    while (bits) {
      s += x[base + static_cast<std::size_t>(std::countr_zero(bits))];
      bits &= bits - 1;
    }
  }
  return s;
}

bool worth_parallel(const Hypergraph& h) {
  return h.num_edges() * h.words_per_row() >= kParallelWordThreshold;
}

}  // namespace

namespace serial {

long max_abs_edge_sum(const Hypergraph& h, const VertexSet& positive) {
  long best = 0;
  const auto pos = positive.words();
  for (std::size_t i = 0; i < h.num_edges(); ++i) best = std::max(best, row_abs_sum(h, i, pos));
  return best;
}

void edge_dot(const Hypergraph& h, std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < h.num_edges(); ++i) out[i] = row_dot(h, i, x);
}

std::vector<std::size_t> column_counts(const Hypergraph& h) {
  std::vector<std::size_t> counts(h.num_vertices(), 0);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto row = h.row(i);
    for (std::size_t w = 0; w < row.size(); ++w) {
      std::uint64_t bits = row[w];
      while (bits) {
        ++counts[w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
    }
  }
  return counts;
}

}  // namespace serial

namespace omp {

long max_abs_edge_sum(const Hypergraph& h, const VertexSet& positive) {
  const auto pos = positive.words();
  const auto m = static_cast<std::int64_t>(h.num_edges());
  long best = 0;
#pragma omp parallel for reduction(max : best) schedule(static) if (worth_parallel(h))
  for (std::int64_t i = 0; i < m; ++i) {
    best = std::max(best, row_abs_sum(h, static_cast<std::size_t>(i), pos));
  }
  return best;
}

void edge_dot(const Hypergraph& h, std::span<const double> x, std::span<double> out) {
  const auto m = static_cast<std::int64_t>(h.num_edges());
#pragma omp parallel for schedule(static) if (worth_parallel(h))
  for (std::int64_t i = 0; i < m; ++i) {
    out[static_cast<std::size_t>(i)] = row_dot(h, static_cast<std::size_t>(i), x);
  }
}

std::vector<std::size_t> column_counts(const Hypergraph& h) {
  std::vector<std::size_t> counts(h.num_vertices(), 0);
  const auto wpr = static_cast<std::int64_t>(h.words_per_row());
  // Each thread owns a block of 64 columns, so no two threads share a counter.
#pragma omp parallel for schedule(static) if (worth_parallel(h))
  for (std::int64_t w = 0; w < wpr; ++w) {
    const auto word = static_cast<std::size_t>(w);
    for (std::size_t i = 0; i < h.num_edges(); ++i) {
      std::uint64_t bits = h.row(i)[word];
      while (bits) {
        ++counts[word * kWordBits + static_cast<std::size_t>(std::countr_zero(bits))];
        bits &= bits - 1;
      }
    }
  }
  return counts;
}

}  // namespace omp

}  // namespace hyperdisc::kernels
