#include <doctest.h>

#include <vector>

#include "hyperdisc/kernels.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

Hypergraph sample(std::size_t n, std::size_t m, double p, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeIndependent{p};
  mp.seed = seed;
  return generate(mp);
}

}  // namespace

TEST_CASE("serial and OpenMP kernels agree") {
  // The last shape is above the parallel threshold.
  const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {63, 5}, {64, 64}, {200, 77}, {4096, 300}};
  for (int threads : {1, 2, 4}) {
    kernels::set_threads(threads);
    for (auto [n, m] : shapes) {
      const auto h = sample(n, m, 0.3, n * 31 + m);
      Xoshiro256 rng(n);
      VertexSet pos(n);
      std::vector<double> x(n);
      for (std::size_t v = 0; v < n; ++v) {
        if (rng.next() >> 63) pos.set(v);
        x[v] = rng.uniform() * 2 - 1;
      }
      CHECK(kernels::serial::max_abs_edge_sum(h, pos) == kernels::omp::max_abs_edge_sum(h, pos));
      CHECK(kernels::serial::column_counts(h) == kernels::omp::column_counts(h));
      std::vector<double> a(m), b(m);
      kernels::serial::edge_dot(h, x, a);
      kernels::omp::edge_dot(h, x, b);
      CHECK(a == b);
    }
  }
  kernels::set_threads(0);
}

TEST_CASE("max edge sum by hand") {
  auto h = Hypergraph::from_edges(5, {{0, 1, 2}, {3, 4}, {0, 4}});
  VertexSet pos(5);
  pos.set(0);
  pos.set(1);
  pos.set(2);
  CHECK(kernels::serial::max_abs_edge_sum(h, pos) == 3);
  CHECK(kernels::omp::max_abs_edge_sum(h, pos) == 3);
  CHECK(kernels::serial::max_abs_edge_sum(Hypergraph(5, 0), pos) == 0);
}
