#include "gpage/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "gpage/errors.hpp"
#include "gpage/formulas.hpp"
#include "gpage/gstates.hpp"

namespace gpage {

namespace {

constexpr int kGradedLevels = 32;
constexpr int kMaxDoublings = 6;
constexpr double kQuadratureTol = 1e-10;
constexpr double kOrthoTol = 1e-10;

double log_norm_const(int j, int delta) {
  const double d = delta;
  const double jj = j;
  return 2.0 * d * std::numbers::ln2 + 2.0 * std::lgamma(2.0 * jj + d + 1.0) -
         std::lgamma(2.0 * jj + 1.0) - std::lgamma(2.0 * jj + 2.0 * d + 1.0) -
         std::log(4.0 * jj + 2.0 * d + 1.0);
}

template <typename Integrand>
double refine_until_stable(std::size_t base_points, Integrand&& integrand, const char* who) {
  std::size_t points = base_points;
  double previous = integrand(graded_unit_rule(points, kGradedLevels));
  for (int doubling = 0; doubling < kMaxDoublings; ++doubling) {
    points *= 2;
    const double current = integrand(graded_unit_rule(points, kGradedLevels));
    if (std::abs(current - previous) < kQuadratureTol) return current;
    previous = current;
  }
  throw AccuracyError(std::string(who) + ": quadrature did not converge");
}

}  // namespace

JacobiKernel::JacobiKernel(int n_a, int delta) : n_a_(n_a), delta_(delta) {
  if (n_a < 1) throw InvalidArgument("JacobiKernel: N_A must be >= 1");
  if (delta < 0) throw InvalidArgument("JacobiKernel: delta must be >= 0");
  points_per_panel_ = static_cast<std::size_t>(
      std::max(4 * n_a + 64, 2 * n_a + delta + 32));
  log_c_.reserve(static_cast<std::size_t>(n_a));
  for (int j = 0; j < n_a; ++j) log_c_.push_back(log_norm_const(j, delta));
  rule_ = graded_unit_rule(points_per_panel_, kGradedLevels);

  // psi_i psi_j is a polynomial of degree 4(N_A - 1) + 2 delta, so a single
  // Gauss panel of points_per_panel_ nodes integrates it exactly.
  const QuadratureRule check = map_rule(gauss_legendre(points_per_panel_), 0.0, 1.0);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n_a, n_a);
  std::vector<double> values;
  for (std::size_t k = 0; k < check.size(); ++k) {
    psi_all(n_a, check.nodes[k], values);
    const Eigen::Map<const Eigen::VectorXd> v(values.data(), n_a);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(v, check.weights[k]);
  }
  gram = gram.selfadjointView<Eigen::Lower>();
  ortho_error_ = (gram - Eigen::MatrixXd::Identity(n_a, n_a)).cwiseAbs().maxCoeff();
  if (!(ortho_error_ <= kOrthoTol))
    throw InternalConsistency("JacobiKernel: wavefunctions are not orthonormal (error " +
                              std::to_string(ortho_error_) + ")");
}

double JacobiKernel::log_norm(int j) const {
  if (j < 0) throw InvalidArgument("JacobiKernel::log_norm: index must be >= 0");
  if (j < n_a_) return log_c_[static_cast<std::size_t>(j)];
  return log_norm_const(j, delta_);
}

double JacobiKernel::norm(int j) const { return std::exp(log_norm(j)); }

void JacobiKernel::psi_all(int count, double x, std::vector<double>& out) const {
  thread_local std::vector<double> poly;
  out.resize(static_cast<std::size_t>(count));
  if (count == 0) return;
  jacobi_poly_all(2 * (count - 1), delta_, delta_, x, poly);
  const double envelope = std::pow((1.0 - x) * (1.0 + x), 0.5 * delta_);
  for (int j = 0; j < count; ++j) {
    out[static_cast<std::size_t>(j)] =
        envelope * poly[static_cast<std::size_t>(2 * j)] * std::exp(-0.5 * log_norm(j));
  }
}

double JacobiKernel::psi(int j, double x) const {
  std::vector<double> values;
  psi_all(j + 1, x, values);
  return values.back();
}

double JacobiKernel::kernel(double x, double y) const {
  std::vector<double> px;
  std::vector<double> py;
  psi_all(n_a_, x, px);
  psi_all(n_a_, y, py);
  double sum = 0.0;
  for (int j = 0; j < n_a_; ++j)
    sum += px[static_cast<std::size_t>(j)] * py[static_cast<std::size_t>(j)];
  return sum;
}

double JacobiKernel::level_density(double x) const {
  std::vector<double> px;
  psi_all(n_a_, x, px);
  double sum = 0.0;
  for (double v : px) sum += v * v;
  return sum / n_a_;
}

SpectralDensity tabulate_density(const JacobiKernel& ctx, std::span<const double> grid) {
  SpectralDensity out;
  out.grid.assign(grid.begin(), grid.end());
  out.values.reserve(grid.size());
  for (double x : grid) out.values.push_back(ctx.level_density(x));
  return out;
}

double correlation_k(const JacobiKernel& ctx, std::span<const double> points) {
  const auto k = static_cast<int>(points.size());
  if (k < 1 || k > ctx.n_a())
    throw InvalidArgument("correlation_k: need 1 <= k <= N_A, got k = " + std::to_string(k));
  Eigen::MatrixXd kmat(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) {
      kmat(a, b) = ctx.kernel(points[static_cast<std::size_t>(a)],
                              points[static_cast<std::size_t>(b)]);
      kmat(b, a) = kmat(a, b);
    }
  const double prefactor =
      std::exp(std::lgamma(ctx.n_a() - k + 1.0) - std::lgamma(ctx.n_a() + 1.0));
  return prefactor * kmat.determinant();
}

double joint_density(const JacobiKernel& ctx, std::span<const double> x) {
  const int n = ctx.n_a();
  if (static_cast<int>(x.size()) != n)
    throw InvalidArgument("joint_density: need exactly N_A points");
  Eigen::MatrixXd vander(n, n);
  std::vector<double> poly;
  double log_weight = -std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    jacobi_poly_all(2 * (n - 1), ctx.delta(), ctx.delta(), xi, poly);
    for (int j = 0; j < n; ++j) vander(i, j) = poly[static_cast<std::size_t>(2 * j)];
    log_weight -= ctx.log_norm(i);
    if (ctx.delta() > 0) {
      const double one_minus = (1.0 - xi) * (1.0 + xi);
      if (one_minus <= 0.0) return 0.0;
      log_weight += ctx.delta() * std::log(one_minus);
    }
  }
  const double det = vander.determinant();
  return det * det * std::exp(log_weight);
}

double average_entropy_quadrature(const JacobiKernel& ctx) {
  auto integrate = [&ctx](const QuadratureRule& rule) {
    std::vector<double> values;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double x = rule.nodes[k];
      ctx.psi_all(ctx.n_a(), x, values);
      double diag = 0.0;
      for (double v : values) diag += v * v;
      sum += rule.weights[k] * pair_entropy(x) * diag;
    }
    return sum;
  };
  return refine_until_stable(ctx.points_per_panel(), integrate, "average_entropy_quadrature");
}

double s_ij_quadrature(const JacobiKernel& ctx, int i, int j) {
  if (i < 0 || j < 0) throw InvalidArgument("s_ij_quadrature: indices must be >= 0");
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  auto integrate = [&](const QuadratureRule& rule) {
    std::vector<double> values;
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double x = rule.nodes[k];
      ctx.psi_all(hi + 1, x, values);
      sum += rule.weights[k] * pair_entropy(x) * values[static_cast<std::size_t>(lo)] *
             values[static_cast<std::size_t>(hi)];
    }
    return sum;
  };
  const auto base = std::max(ctx.points_per_panel(),
                             static_cast<std::size_t>(lo + hi + ctx.delta() + 32));
  return refine_until_stable(base, integrate, "s_ij_quadrature");
}

double variance_finite_n(const JacobiKernel& ctx, double tail_tol) {
  return variance_finite_n(ctx.n_a(), ctx.delta(), tail_tol);
}

double variance_finite_n(int n_a, int delta, double tail_tol) {
  if (!(tail_tol > 0.0)) throw InvalidArgument("variance_finite_n: tail_tol must be > 0");
  if (n_a < 1 || delta < 0) throw InvalidArgument("variance_finite_n: need N_A >= 1, delta >= 0");
  const double row_tol = tail_tol / n_a;
  constexpr int kMaxTerms = 10'000'000;

  double total = 0.0;
  for (int i = 0; i < n_a; ++i) {
    double row = 0.0;
    double previous = 0.0;
    bool decaying = false;
    for (int j = n_a;; ++j) {
      if (j - n_a > kMaxTerms) throw AccuracyError("variance_finite_n: tail did not converge");
      const double term = s2_closed_form(i, j, delta);
      row += term;
      if (term == 0.0) continue;
      if (previous > 0.0 && j >= i + 2) {
        const double ratio = term / previous;
        if (ratio >= 1.0) {
          if (decaying) throw AccuracyError("variance_finite_n: non-decreasing tail");
        } else {
          decaying = true;
          // The far tail decays like a power of j, where a pure geometric
          // extrapolation underestimates; take the larger of the two.
          const double geometric = term * ratio / (1.0 - ratio);
          const double exponent = -std::log(ratio) / std::log(j / (j - 1.0));
          const double power = exponent > 1.0 ? term * j / (exponent - 1.0)
                                              : std::numeric_limits<double>::infinity();
          if (std::max(geometric, power) < row_tol) break;
        }
      }
      previous = term;
    }
    total += row;
  }
  return total;
}

}  // namespace gpage
