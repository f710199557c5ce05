#include "gpage/special.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gpage/errors.hpp"

namespace gpage {

namespace {

void require_positive(double z, const char* who) {
  if (!(z > 0.0)) throw InvalidArgument(std::string(who) + ": argument must be > 0");
}

}  // namespace

double digamma(double z) {
  require_positive(z, "digamma");
  double shift = 0.0;
  while (z < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  // B_{2k} / (2k), k = 1..7
  constexpr double kCoef[] = {1.0 / 12.0,  -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
                              1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const double inv2 = 1.0 / (z * z);
  double series = 0.0;
  for (int k = 6; k >= 0; --k) series = (series + kCoef[k]) * inv2;
  return shift + std::log(z) - 0.5 / z - series;
}

double log_gamma(double z) {
  require_positive(z, "log_gamma");
  return std::lgamma(z);
}

void jacobi_poly_all(int max_degree, double a, double b, double x, std::vector<double>& out) {
  if (max_degree < 0) throw InvalidArgument("jacobi_poly: degree must be >= 0");
  out.resize(static_cast<std::size_t>(max_degree) + 1);
  out[0] = 1.0;
  if (max_degree == 0) return;
  out[1] = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  const double ab = a + b;
  const double a2b2 = a * a - b * b;
  for (int n = 2; n <= max_degree; ++n) {
    const double two_n_ab = 2.0 * n + ab;
    const double lead = 2.0 * n * (n + ab) * (two_n_ab - 2.0);
    const double mid = (two_n_ab - 1.0) * (two_n_ab * (two_n_ab - 2.0) * x + a2b2);
    const double back = 2.0 * (n + a - 1.0) * (n + b - 1.0) * two_n_ab;
    const auto k = static_cast<std::size_t>(n);
    out[k] = (mid * out[k - 1] - back * out[k - 2]) / lead;
  }
}

double jacobi_poly(int n, double a, double b, double x) {
  std::vector<double> values;
  jacobi_poly_all(n, a, b, x, values);
  const double v = values.back();
  if (!std::isfinite(v)) throw AccuracyError("jacobi_poly: value overflowed");
  return v;
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * f(nodes[k]);
  return sum;
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw InvalidArgument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 30; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule map_rule(const QuadratureRule& rule, double lo, double hi) {
  QuadratureRule out;
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  out.nodes.reserve(rule.size());
  out.weights.reserve(rule.size());
  for (std::size_t k = 0; k < rule.size(); ++k) {
    out.nodes.push_back(mid + half * rule.nodes[k]);
    out.weights.push_back(half * rule.weights[k]);
  }
  return out;
}

QuadratureRule graded_unit_rule(std::size_t points_per_panel, int levels) {
  if (levels < 1) throw InvalidArgument("graded_unit_rule: levels must be >= 1");
  const QuadratureRule base = gauss_legendre(points_per_panel);
  QuadratureRule out;
  double lo = 0.0;
  double width = 0.5;
  for (int level = 0; level <= levels; ++level) {
    const double hi = (level == levels) ? 1.0 : lo + width;
    const QuadratureRule panel = map_rule(base, lo, hi);
    out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
    lo = hi;
    width *= 0.5;
  }
  return out;
}

}  // namespace gpage
