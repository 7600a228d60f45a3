#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc {

// Each vertex joins each edge independently with probability p.
struct EdgeIndependent {
  double p = 0.5;
};

// Each vertex joins a uniformly random d-subset of the m edges.
struct EdgeDependent {
  std::size_t d = 1;
};

using ModelKind = std::variant<EdgeIndependent, EdgeDependent>;

struct ModelParams {
  std::size_t n = 1;
  std::size_t m = 1;
  ModelKind kind = EdgeIndependent{};
  std::uint64_t seed = 0;

  void validate() const;
  // Edge probability: p, or d/m for the edge-dependent model.
  double edge_probability() const;
  // Mean edge size pn (= dn/m).
  double mean_edge_size() const { return edge_probability() * static_cast<double>(n); }
  std::string model_name() const;  // "ind" | "dep"
};

// Draw order (part of the reproducibility contract):
//  - edge-independent: one xoshiro256** stream seeded with `seed`; bit (i, j)
//    is `uniform() < p`, visited row-major (i outer, j inner).
//  - edge-dependent: column j uses Xoshiro256::stream(seed, j) and a partial
//    Fisher-Yates shuffle of the identity permutation of [0, m): for t < d,
//    swap position t with t + below(m - t); rows idx[0..d) get a one.
Hypergraph generate(const ModelParams& params);
Hypergraph generate_serial(const ModelParams& params);

// Column history of an edge-dependent incidence matrix, rows 0-based:
// B(i, k) = number of ones in column k at rows >= i (B(0, k) = d, B(m, k) = 0),
// P(i, k) = B(i, k) / (m - i) for i < m.
class ColumnHistory {
 public:
  ColumnHistory(std::size_t n, std::size_t m, std::size_t d);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return m_; }
  std::size_t degree() const noexcept { return d_; }

  int B(std::size_t i, std::size_t k) const noexcept { return b_[i * n_ + k]; }
  double P(std::size_t i, std::size_t k) const noexcept { return p_[i * n_ + k]; }
  double row_sum_P(std::size_t i) const;

 private:
  friend ColumnHistory column_history(const Hypergraph& h, std::size_t d);
  std::size_t n_, m_, d_;
  std::vector<int> b_;
  std::vector<double> p_;
};

ColumnHistory column_history(const Hypergraph& h, std::size_t d);

// Event Q_i: for every j <= i, sum_k P(j,k) >= (1-eps) p n and
// max_k P(j,k) <= (1+eps) c.
bool history_event_Q(const ColumnHistory& hist, std::size_t i, double eps, double c, double p);

// Two-sided concentration of column k's conditional probabilities for all
// i <= floor(alpha m):
//   (1-lambda) / r * p <= P(i,k) <= (1+lambda) * r * p,  r = 1 + xi / (1 - alpha - xi).
bool column_concentration_holds(const ColumnHistory& hist, std::size_t k, double alpha, double lambda,
                                double xi);

}  // namespace hyperdisc
