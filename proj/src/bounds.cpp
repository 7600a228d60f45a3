#include "hyperdisc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperdisc/error.hpp"
#include "hyperdisc/iterated.hpp"

namespace hyperdisc::bounds {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(errc::kInvalidParameter, what);
}

void check_interval(double lo, double hi) { require(lo <= hi, "interval requires L <= R"); }

}  // namespace

void BoundParams::validate() const {
  require(n >= 1, "n must be positive");
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  require(eps >= 0.0 && eps < 1.0, "eps must lie in [0, 1)");
  require(zeta > 0.0 && zeta < 1.0, "zeta must lie in (0, 1)");
}

double BoundParams::variance_floor() const {
  return (1.0 - zeta) * (1.0 - eps) * static_cast<double>(n) * p;
}

double interval_bound_rough(const BoundParams& params, double lo, double hi) {
  params.validate();
  check_interval(lo, hi);
  const double s2 = params.variance_floor();
  require(s2 > 0.0, "zero denominator");
  return (params.c_uni + (hi - lo) / std::sqrt(kTwoPi)) / std::sqrt(s2);
}

double interval_bound_sigma(double sigma, double lo, double hi, double c_uni) {
  check_interval(lo, hi);
  require(sigma > 0.0, "zero denominator");
  const double w = hi - lo;
  return c_uni / sigma + std::sqrt(1.0 - std::exp(-w * w / (kTwoPi * sigma * sigma)));
}

double interval_bound_tight(const BoundParams& params, double lo, double hi) {
  params.validate();
  const double s2 = params.variance_floor();
  require(s2 > 0.0, "zero denominator");
  return interval_bound_sigma(std::sqrt(s2), lo, hi, params.c_uni);
}

double parity_even_probability(std::size_t n, double p) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0, 1]");
  return 0.5 * (1.0 + std::pow(1.0 - 2.0 * p, static_cast<double>(n)));
}

double dependent_parity_pair_probability(std::size_t n, std::size_t m, std::size_t d) {
  require(m >= 2, "m must be at least 2");
  require(d >= 1 && d <= m, "d must satisfy 1 <= d <= m");
  const double md = static_cast<double>(m);
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);
  const double a = std::pow(1.0 - 2.0 * dd / md, nn);
  const double b = std::pow(1.0 - 4.0 * dd * (md - dd) / (md * (md - 1.0)), nn);
  return (1.0 - 2.0 * a + b) / 4.0;
}

double hypergeometric_tail_bound(std::size_t m, std::size_t d, std::size_t j, double lambda) {
  require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  require(d >= 1 && d <= m && j >= 1 && j <= m, "need 1 <= d, j <= m");
  const double mu = static_cast<double>(d) * static_cast<double>(j) / static_cast<double>(m);
  return 2.0 * std::exp(-lambda * lambda * mu / 3.0);
}

double history_failure_bound(std::size_t m, std::size_t d, double alpha, double lambda, double xi) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  require(lambda > 0.0 && lambda < 1.0, "lambda must lie in (0, 1)");
  require(xi > 0.0 && xi < 1.0, "xi must lie in (0, 1)");
  require(m >= 1 && xi >= 1.0 / static_cast<double>(m), "xi must be at least 1/m");
  require(alpha + xi < 1.0, "alpha + xi must be below 1");
  const double g = 1.0 - alpha - xi;
  return 8.0 / xi * std::exp(-static_cast<double>(d) * lambda * lambda * g * g / 3.0);
}

Regime parse_regime(const std::string& s) {
  if (s == "sparse") return Regime::sparse;
  if (s == "dense") return Regime::dense;
  throw Error(errc::kInvalidParameter, "invalid regime '" + s + "' (expected sparse|dense)");
}

double first_moment_scale(std::size_t n, std::size_t m, double p, Regime regime) {
  require(n >= 1 && m >= 1, "n and m must be positive");
  require(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
  const double nn = static_cast<double>(n);
  const double sigma = std::sqrt(p * (1.0 - p) * nn);
  if (regime == Regime::sparse) return std::pow(2.0, -nn / static_cast<double>(m)) * sigma;
  const double gamma = std::min(p * nn, static_cast<double>(m) / nn);
  require(gamma > 1.0, "dense regime needs gamma = min(pn, m/n) > 1");
  return sigma * std::sqrt(std::log(gamma));
}

double first_moment_log_expected_count(std::size_t n, std::size_t m, double p, double kappa, Regime regime,
                                       double c_uni) {
  require(kappa > 0.0, "kappa must be positive");
  const double f_hat = first_moment_scale(n, m, p, regime);
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double sigma = std::sqrt(p * (1.0 - p) * nn);
  const double width = 2.0 * kappa * f_hat;
  if (regime == Regime::sparse) {
    if (kappa * f_hat >= 1.0) return mm * std::log(kappa * (c_uni + std::sqrt(2.0 / std::numbers::pi)));
    return nn * std::numbers::ln2 + mm * std::log((c_uni + width / std::sqrt(kTwoPi)) / sigma);
  }
  const double base = c_uni / sigma + std::sqrt(1.0 - std::exp(-width * width / (kTwoPi * sigma * sigma)));
  return nn * std::numbers::ln2 + mm * std::log(base);
}

Model parse_model(const std::string& s) {
  if (s == "ind" || s == "edge_independent") return Model::edge_independent;
  if (s == "dep" || s == "edge_dependent") return Model::edge_dependent;
  throw Error(errc::kInvalidParameter, "invalid model '" + s + "' (expected ind|dep)");
}

double lower_bound_curve(std::size_t n, std::size_t m, double p_or_d, Model model) {
  require(n >= 1 && m >= 1, "n and m must be positive");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double mu = model == Model::edge_independent ? p_or_d * nn : p_or_d * nn / mm;
  require(mu >= 0.0, "mean edge size must be non-negative");
  if (m <= n) return std::max(std::pow(2.0, -nn / mm) * std::sqrt(mu), 1.0);
  const double gamma = std::min(mu, mm / nn);
  return std::sqrt(mu * std::log(std::max(gamma, 1.0)));
}

double upper_bound_curve(std::size_t n, std::size_t m, std::size_t d) {
  const double beta = compute_beta(n, m, d);
  const double mu = static_cast<double>(d) * static_cast<double>(n) / static_cast<double>(m);
  return std::sqrt(mu * std::log(static_cast<double>(m) / static_cast<double>(n)) * beta);
}

}  // namespace hyperdisc::bounds
