#pragma once

// Closed-form evaluators. All logarithms are natural unless named lg.

#include <cstddef>
#include <string>

namespace hyperdisc::bounds {

// Berry-Esseen constant: c_uni / 2 <= 0.560.
inline constexpr double kUniversalConstant = 1.120;

struct BoundParams {
  std::size_t n = 1;
  std::size_t m = 1;
  double p = 0.5;     // in (0, 1)
  double eps = 0.0;   // in [0, 1)
  double zeta = 0.5;  // in (0, 1)
  double kappa = 0.1;
  double c_uni = kUniversalConstant;

  void validate() const;
  // (1 - zeta)(1 - eps) n p, the variance floor of the edge sum.
  double variance_floor() const;
};

// (c_uni + (R - L) / sqrt(2 pi)) / sqrt((1-zeta)(1-eps) n p)
double interval_bound_rough(const BoundParams& params, double lo, double hi);

// c_uni / s + (1 - exp(-(R-L)^2 / (2 pi s^2)))^(1/2),  s^2 = (1-zeta)(1-eps) n p
double interval_bound_tight(const BoundParams& params, double lo, double hi);

// Same shape with an explicit standard deviation sigma > 0.
double interval_bound_sigma(double sigma, double lo, double hi, double c_uni = kUniversalConstant);

// P[Bin(n, p) is even] = (1 + (1 - 2p)^n) / 2
double parity_even_probability(std::size_t n, double p);

// Probability that two fixed edges of an edge-dependent sample both have odd
// size: (1 - 2(1 - 2d/m)^n + (1 - 4 d (m-d) / (m (m-1)))^n) / 4.
double dependent_parity_pair_probability(std::size_t n, std::size_t m, std::size_t d);

// 2 exp(-lambda^2 mu / 3), mu = d j / m
double hypergeometric_tail_bound(std::size_t m, std::size_t d, std::size_t j, double lambda);

// 8 / xi * exp(-d lambda^2 (1 - alpha - xi)^2 / 3)
double history_failure_bound(std::size_t m, std::size_t d, double alpha, double lambda, double xi);

enum class Regime { sparse, dense };
Regime parse_regime(const std::string& s);

// Scale f_hat used by the first-moment argument for the edge-independent model:
// sparse: 2^(-n/m) sqrt(p(1-p)n);  dense: sqrt(p(1-p) n ln gamma), gamma = min(pn, m/n).
double first_moment_scale(std::size_t n, std::size_t m, double p, Regime regime);

// ln of the upper bound on E[Z], Z = #colourings with disc <= kappa f_hat.
//  sparse: n ln 2 + m ln((c + 2 kappa f_hat / sqrt(2 pi)) / sigma), which
//          collapses to m ln(kappa (c + sqrt(2/pi))) when kappa f_hat >= 1;
//  dense:  n ln 2 + m ln(c / sigma + (1 - exp(-(2 kappa f_hat)^2 / (2 pi sigma^2)))^(1/2)),
// with sigma = sqrt(p(1-p)n).
double first_moment_log_expected_count(std::size_t n, std::size_t m, double p, double kappa, Regime regime,
                                       double c_uni = kUniversalConstant);

enum class Model { edge_independent, edge_dependent };
Model parse_model(const std::string& s);

// Reference lower-bound curve with implied constant 1:
//   m <= n: max(2^(-n/m) sqrt(mu), 1);  m > n: sqrt(mu ln gamma), gamma = min(mu, m/n),
// mu = pn (edge-independent, p_or_d = p) or dn/m (edge-dependent, p_or_d = d).
double lower_bound_curve(std::size_t n, std::size_t m, double p_or_d, Model model);

// sqrt(mu ln(m/n) beta) with beta = compute_beta(n, m, d).
double upper_bound_curve(std::size_t n, std::size_t m, std::size_t d);

}  // namespace hyperdisc::bounds
