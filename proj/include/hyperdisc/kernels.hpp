#pragma once

// Data-parallel inner loops. Every kernel has a plain serial reference and an
// OpenMP variant with identical results (each output element is computed by
// exactly one thread in a fixed order, so floating point sums are bit-equal).

#include <cstddef>
#include <span>
#include <vector>

#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc::kernels {

// Below this many incidence words the OpenMP variants run on one thread.
inline constexpr std::size_t kParallelWordThreshold = 1u << 14;

int max_threads();
// Sets the OpenMP thread count used by the omp:: kernels; k <= 0 means "all".
void set_threads(int k);

namespace serial {
// max_e |psi(e)| where psi(v) = +1 iff positive.test(v).
long max_abs_edge_sum(const Hypergraph& h, const VertexSet& positive);
// out[e] = sum_{v in e} x[v]
void edge_dot(const Hypergraph& h, std::span<const double> x, std::span<double> out);
std::vector<std::size_t> column_counts(const Hypergraph& h);
}  // namespace serial

namespace omp {
long max_abs_edge_sum(const Hypergraph& h, const VertexSet& positive);
void edge_dot(const Hypergraph& h, std::span<const double> x, std::span<double> out);
std::vector<std::size_t> column_counts(const Hypergraph& h);
}  // namespace omp

}  // namespace hyperdisc::kernels
