#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gpage {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Psi(z) = Gamma'(z)/Gamma(z) for z > 0.
///
/// Shifts the argument upward with Psi(z) = Psi(z + 1) - 1/z until z >= 10,
/// then sums the asymptotic series through the B_14 term. Absolute error is
/// below 1e-12 on (0, 1e6]. Throws InvalidArgument for z <= 0 or NaN.
double digamma(double z);

/// ln Gamma(z) for z > 0. Throws InvalidArgument for z <= 0 or NaN.
double log_gamma(double z);

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_poly(int n, double a, double b, double x);

/// Values P_0 .. P_{max_degree} at x, written into `out` (resized).
void jacobi_poly_all(int max_degree, double a, double b, double x, std::vector<double>& out);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  double integrate(const std::function<double(double)>& f) const;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact through degree 2n - 1.
/// Throws InvalidArgument for n == 0.
QuadratureRule gauss_legendre(std::size_t n);

/// Affine image of `rule` (defined on [-1, 1]) on [lo, hi].
QuadratureRule map_rule(const QuadratureRule& rule, double lo, double hi);

/// Composite rule on [0, 1] whose panels shrink geometrically toward x = 1:
/// [0, 1/2], [1/2, 3/4], ..., [1 - 2^-(levels-1), 1 - 2^-levels], plus a last
/// panel reaching 1. Each panel carries an n-point Gauss-Legendre rule.
/// Integrands with (1-x) log(1-x) behaviour at x = 1 converge geometrically
/// in `levels` on this mesh instead of algebraically.
QuadratureRule graded_unit_rule(std::size_t points_per_panel, int levels);

}  // namespace gpage
