#include "hyperdisc/models.hpp"

#include <cmath>
#include <numeric>

#include "hyperdisc/error.hpp"
#include "hyperdisc/kernels.hpp"
#include "hyperdisc/rng.hpp"

namespace hyperdisc {

void ModelParams::validate() const {
  if (n == 0) throw Error(errc::kInvalidParameter, "n must be positive");
  if (m == 0) throw Error(errc::kInvalidParameter, "m must be positive");
  if (const auto* ind = std::get_if<EdgeIndependent>(&kind)) {
    if (!(ind->p >= 0.0 && ind->p <= 1.0)) throw Error(errc::kInvalidParameter, "p must lie in [0, 1]");
  } else {
    const auto& dep = std::get<EdgeDependent>(kind);
    if (dep.d < 1 || dep.d > m) throw Error(errc::kInvalidParameter, "d must satisfy 1 <= d <= m");
  }
}

double ModelParams::edge_probability() const {
  if (const auto* ind = std::get_if<EdgeIndependent>(&kind)) return ind->p;
  return static_cast<double>(std::get<EdgeDependent>(kind).d) / static_cast<double>(m);
}

std::string ModelParams::model_name() const {
  return std::holds_alternative<EdgeIndependent>(kind) ? "ind" : "dep";
}

namespace {

Hypergraph generate_independent(const ModelParams& params, double p) {
  Hypergraph h(params.n, params.m);
  Xoshiro256 rng(params.seed);
  for (std::size_t i = 0; i < params.m; ++i) {
    for (std::size_t j = 0; j < params.n; ++j) {
      if (rng.bernoulli(p)) h.set(i, j);
    }
  }
  return h;
}

void sample_column(Hypergraph& h, const ModelParams& params, std::size_t d, std::size_t column,
                   std::vector<std::size_t>& idx) {
  const std::size_t m = params.m;
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto rng = Xoshiro256::stream(params.seed, column);
  for (std::size_t t = 0; t < d; ++t) {
    const auto r = t + static_cast<std::size_t>(rng.below(m - t));
    std::swap(idx[t], idx[r]);
    h.set(idx[t], column);
  }
}

}  // namespace

Hypergraph generate_serial(const ModelParams& params) {
  params.validate();
  if (const auto* ind = std::get_if<EdgeIndependent>(&params.kind)) return generate_independent(params, ind->p);
  const std::size_t d = std::get<EdgeDependent>(params.kind).d;
  Hypergraph h(params.n, params.m);
  std::vector<std::size_t> idx(params.m);
  for (std::size_t j = 0; j < params.n; ++j) sample_column(h, params, d, j, idx);
  return h;
}

Hypergraph generate(const ModelParams& params) {
  params.validate();
  if (const auto* ind = std::get_if<EdgeIndependent>(&params.kind)) return generate_independent(params, ind->p);
  const std::size_t d = std::get<EdgeDependent>(params.kind).d;
  Hypergraph h(params.n, params.m);
  const auto blocks = static_cast<std::int64_t>(words_for(params.n));
  const bool parallel = params.n * params.m >= (std::size_t{1} << 20);
  // One thread per 64-column block: columns in a block share incidence words.
#pragma omp parallel if (parallel)
  {
    std::vector<std::size_t> idx(params.m);
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kWordBits;
      const std::size_t hi = std::min(params.n, lo + kWordBits);
      for (std::size_t j = lo; j < hi; ++j) sample_column(h, params, d, j, idx);
    }
  }
  return h;
}

// ------------------------------------------------------------ column history

ColumnHistory::ColumnHistory(std::size_t n, std::size_t m, std::size_t d)
    : n_(n), m_(m), d_(d), b_((m + 1) * n, 0), p_(m * n, 0.0) {}

double ColumnHistory::row_sum_P(std::size_t i) const {
  double s = 0.0;
  for (std::size_t k = 0; k < n_; ++k) s += P(i, k);
  return s;
}

ColumnHistory column_history(const Hypergraph& h, std::size_t d) {
  const std::size_t n = h.num_vertices();
  const std::size_t m = h.num_edges();
  const auto degrees = degree_profile(h);
  for (std::size_t k = 0; k < n; ++k) {
    if (degrees[k] != d) {
      throw Error(errc::kInvalidParameter, "column " + std::to_string(k) + " has " +
                                               std::to_string(degrees[k]) + " ones, expected " +
                                               std::to_string(d));
    }
  }
  ColumnHistory hist(n, m, d);
  for (std::size_t k = 0; k < n; ++k) hist.b_[k] = static_cast<int>(d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const int b = hist.b_[i * n + k];
      hist.b_[(i + 1) * n + k] = b - (h.contains(i, k) ? 1 : 0);
      hist.p_[i * n + k] = static_cast<double>(b) / static_cast<double>(m - i);
    }
  }
  return hist;
}

bool history_event_Q(const ColumnHistory& hist, std::size_t i, double eps, double c, double p) {
  if (i >= hist.num_edges()) throw Error(errc::kIndexOutOfRange, "history row index out of range");
  const double n = static_cast<double>(hist.num_vertices());
  const double sum_floor = (1.0 - eps) * p * n;
  const double cap = (1.0 + eps) * c;
  for (std::size_t j = 0; j <= i; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < hist.num_vertices(); ++k) {
      const double v = hist.P(j, k);
      if (v > cap) return false;
      s += v;
    }
    if (s < sum_floor) return false;
  }
  return true;
}

bool column_concentration_holds(const ColumnHistory& hist, std::size_t k, double alpha, double lambda,
                                double xi) {
  if (k >= hist.num_vertices()) throw Error(errc::kIndexOutOfRange, "column index out of range");
  const double m = static_cast<double>(hist.num_edges());
  const double p = static_cast<double>(hist.degree()) / m;
  const double r = 1.0 + xi / (1.0 - alpha - xi);
  const double lo = (1.0 - lambda) / r * p;
  const double hi = (1.0 + lambda) * r * p;
  const auto last = std::min(static_cast<std::size_t>(std::floor(alpha * m)), hist.num_edges() - 1);
  for (std::size_t i = 0; i <= last; ++i) {
    const double v = hist.P(i, k);
    if (v < lo || v > hi) return false;
  }
  return true;
}

}  // namespace hyperdisc
