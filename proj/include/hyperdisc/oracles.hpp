#pragma once

// Brute-force reference computations. They share no code with the library
// beyond the Hypergraph container and are only meant for small inputs.

#include <cstddef>
#include <map>
#include <vector>

#include "hyperdisc/hypergraph.hpp"

namespace hyperdisc::oracles {

// Unpacked 0/1 incidence matrix, rows are edges.
std::vector<std::vector<int>> dense_rows(const Hypergraph& h);

// min over all 2^n colourings of max_e |sum_{v in e} x_v|, by a plain double loop.
long naive_disc(const Hypergraph& h);

// Exact distribution of S = sum_i a_i X_i, X_i ~ Bernoulli(p_i) independent,
// by walking all 2^n outcomes.
std::map<long, long double> sum_distribution(const std::vector<int>& a, const std::vector<double>& p);

// P[S in [lo, hi]] from the distribution above.
long double interval_probability(const std::vector<int>& a, const std::vector<double>& p, double lo, double hi);

// sum_{j even} C(n, j) p^j (1-p)^(n-j)
long double binomial_even_probability(std::size_t n, double p);

// P[X = x] for X the number of marked items among j draws without
// replacement from m items of which d are marked.
long double hypergeometric_pmf(std::size_t m, std::size_t d, std::size_t j, std::size_t x);

// P[|X - mu| >= lambda mu], mu = d j / m.
long double hypergeometric_two_sided_tail(std::size_t m, std::size_t d, std::size_t j, double lambda);

// sum over all 2^n colourings psi of P[|psi(e)| <= t]^m for one random edge
// of the edge-independent model with probability p.
long double first_moment_exhaustive(std::size_t n, std::size_t m, double p, double t);

// counts[i][k] = ones of column k in rows >= i, i = 0..m.
std::vector<std::vector<int>> suffix_column_counts(const Hypergraph& h);

}  // namespace hyperdisc::oracles
