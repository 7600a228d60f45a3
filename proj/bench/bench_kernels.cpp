// Serial reference vs OpenMP kernels on matrices of increasing size.
//   ./bench_kernels --benchmark_filter=EdgeDot

#include <benchmark/benchmark.h>

#include <vector>

#include "hyperdisc/exact.hpp"
#include "hyperdisc/kernels.hpp"
#include "hyperdisc/models.hpp"
#include "hyperdisc/rng.hpp"

using namespace hyperdisc;

namespace {

Hypergraph sample(std::size_t n, std::size_t m) {
  ModelParams mp;
  mp.n = n;
  mp.m = m;
  mp.kind = EdgeIndependent{0.1};
  mp.seed = n * 7919 + m;
  return generate_serial(mp);
}

VertexSet random_mask(std::size_t n) {
  Xoshiro256 rng(n);
  VertexSet s(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (rng.next() >> 63) s.set(v);
  }
  return s;
}

template <long (*F)(const Hypergraph&, const VertexSet&)>
void MaxAbsEdgeSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = sample(n, n * 4);
  const auto mask = random_mask(n);
  for (auto _ : state) benchmark::DoNotOptimize(F(h, mask));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.num_edges()));
}

template <void (*F)(const Hypergraph&, std::span<const double>, std::span<double>)>
void EdgeDot(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = sample(n, n * 4);
  std::vector<double> x(n, 0.5), out(h.num_edges());
  for (auto _ : state) {
    F(h, x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.num_edges()));
}

template <std::vector<std::size_t> (*F)(const Hypergraph&)>
void ColumnCounts(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = sample(n, n * 4);
  for (auto _ : state) benchmark::DoNotOptimize(F(h));
}

void GenerateSerial(benchmark::State& state) {
  ModelParams mp;
  mp.n = static_cast<std::size_t>(state.range(0));
  mp.m = 4096;
  mp.kind = EdgeDependent{256};
  for (auto _ : state) benchmark::DoNotOptimize(generate_serial(mp));
}

void GenerateOmp(benchmark::State& state) {
  ModelParams mp;
  mp.n = static_cast<std::size_t>(state.range(0));
  mp.m = 4096;
  mp.kind = EdgeDependent{256};
  for (auto _ : state) benchmark::DoNotOptimize(generate(mp));
}

void ExactThreads(benchmark::State& state) {
  ModelParams mp;
  mp.n = 22;
  mp.m = 30;
  mp.kind = EdgeIndependent{0.5};
  mp.seed = 5;
  const auto h = generate(mp);
  ExactOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(disc_exact(h, o).disc);
}

}  // namespace

BENCHMARK(MaxAbsEdgeSum<kernels::serial::max_abs_edge_sum>)->Name("MaxAbsEdgeSum/serial")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(MaxAbsEdgeSum<kernels::omp::max_abs_edge_sum>)->Name("MaxAbsEdgeSum/omp")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(EdgeDot<kernels::serial::edge_dot>)->Name("EdgeDot/serial")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(EdgeDot<kernels::omp::edge_dot>)->Name("EdgeDot/omp")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(ColumnCounts<kernels::serial::column_counts>)->Name("ColumnCounts/serial")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(ColumnCounts<kernels::omp::column_counts>)->Name("ColumnCounts/omp")->RangeMultiplier(4)->Range(256, 16384);
BENCHMARK(GenerateSerial)->Arg(256)->Arg(4096);
BENCHMARK(GenerateOmp)->Arg(256)->Arg(4096);
BENCHMARK(ExactThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
