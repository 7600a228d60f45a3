#include "hyperdisc/oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace hyperdisc::oracles {

std::vector<std::vector<int>> dense_rows(const Hypergraph& h) {
  std::vector<std::vector<int>> rows(h.num_edges(), std::vector<int>(h.num_vertices(), 0));
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    for (std::size_t v = 0; v < h.num_vertices(); ++v) rows[e][v] = h.contains(e, v) ? 1 : 0;
  }
  return rows;
}

long naive_disc(const Hypergraph& h) {
  const std::size_t n = h.num_vertices();
  if (n > 24) throw std::invalid_argument("naive_disc: n too large");
  const auto rows = dense_rows(h);
  long best = -1;
  std::vector<int> x(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t v = 0; v < n; ++v) x[v] = (mask >> v) & 1 ? 1 : -1;
    long worst = 0;
    for (const auto& r : rows) {
      long s = 0;
      for (std::size_t v = 0; v < n; ++v) s += r[v] * x[v];
      worst = std::max(worst, std::labs(s));
    }
    if (best < 0 || worst < best) best = worst;
  }
  return best;
}

namespace {

void walk(const std::vector<int>& a, const std::vector<double>& p, std::size_t i, long sum, long double prob,
          std::map<long, long double>& out) {
  if (i == a.size()) {
    out[sum] += prob;
    return;
  }
  walk(a, p, i + 1, sum, prob * (1.0L - p[i]), out);
  walk(a, p, i + 1, sum + a[i], prob * p[i], out);
}

long double log_choose(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
         std::lgamma(static_cast<long double>(n - k) + 1);
}

}  // namespace

std::map<long, long double> sum_distribution(const std::vector<int>& a, const std::vector<double>& p) {
  if (a.size() != p.size()) throw std::invalid_argument("sum_distribution: length mismatch");
  std::map<long, long double> out;
  walk(a, p, 0, 0, 1.0L, out);
  return out;
}

long double interval_probability(const std::vector<int>& a, const std::vector<double>& p, double lo, double hi) {
  long double total = 0.0L;
  for (const auto& [s, q] : sum_distribution(a, p)) {
    if (s >= lo && s <= hi) total += q;
  }
  return total;
}

long double binomial_even_probability(std::size_t n, double p) {
  long double total = 0.0L;
  for (std::size_t j = 0; j <= n; j += 2) {
    long double c = 1.0L;
    for (std::size_t i = 0; i < j; ++i) c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    total += c * std::pow(static_cast<long double>(p), static_cast<long double>(j)) *
             std::pow(1.0L - p, static_cast<long double>(n - j));
  }
  return total;
}

long double hypergeometric_pmf(std::size_t m, std::size_t d, std::size_t j, std::size_t x) {
  if (x > d || x > j || j - x > m - d) return 0.0L;
  return std::exp(log_choose(d, x) + log_choose(m - d, j - x) - log_choose(m, j));
}

long double hypergeometric_two_sided_tail(std::size_t m, std::size_t d, std::size_t j, double lambda) {
  const long double mu = static_cast<long double>(d) * j / m;
  long double total = 0.0L;
  for (std::size_t x = 0; x <= std::min(d, j); ++x) {
    // A hair of slack so values sitting on the boundary count as in the tail.
    if (std::fabs(static_cast<long double>(x) - mu) >= lambda * mu - 1e-9L) total += hypergeometric_pmf(m, d, j, x);
  }
  return total;
}

long double first_moment_exhaustive(std::size_t n, std::size_t m, double p, double t) {
  if (n > 20) throw std::invalid_argument("first_moment_exhaustive: n too large");
  long double total = 0.0L;
  const long offset = static_cast<long>(n);
  std::vector<long double> dist(2 * n + 1), next(2 * n + 1);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::fill(dist.begin(), dist.end(), 0.0L);
    dist[offset] = 1.0L;
    for (std::size_t v = 0; v < n; ++v) {
      const int a = (mask >> v) & 1 ? 1 : -1;
      std::fill(next.begin(), next.end(), 0.0L);
      for (std::size_t s = 0; s < dist.size(); ++s) {
        if (dist[s] == 0.0L) continue;
        next[s] += dist[s] * (1.0L - p);
        next[s + a] += dist[s] * p;
      }
      dist.swap(next);
    }
    long double q = 0.0L;
    for (std::size_t s = 0; s < dist.size(); ++s) {
      if (std::abs(static_cast<long>(s) - offset) <= t) q += dist[s];
    }
    total += std::pow(q, static_cast<long double>(m));
  }
  return total;
}

std::vector<std::vector<int>> suffix_column_counts(const Hypergraph& h) {
  const std::size_t m = h.num_edges(), n = h.num_vertices();
  std::vector<std::vector<int>> counts(m + 1, std::vector<int>(n, 0));
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t k = 0; k < n; ++k) counts[i][k] = counts[i + 1][k] + (h.contains(i, k) ? 1 : 0);
  }
  return counts;
}

}  // namespace hyperdisc::oracles
