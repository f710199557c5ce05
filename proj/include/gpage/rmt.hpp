#pragma once

#include <span>
#include <vector>

#include "gpage/special.hpp"

namespace gpage {

/// Orthonormal wavefunctions, kernel and quadrature for the Jacobi ensemble
/// that governs the singular values x in [0, 1] of a Gaussian state's
/// subsystem block (N_A values, weight (1 - x^2)^delta, delta = N_B - N_A).
///
///   psi_j(x) = (1 - x^2)^{delta/2} P^{(delta,delta)}_{2j}(x) / sqrt(c_j)
///   c_j      = 2^{2 delta} ((2j + delta)!)^2 / ((2j)! (2j + 2 delta)! (4j + 2 delta + 1))
///   K(x, y)  = sum_{j < N_A} psi_j(x) psi_j(y)
///
/// Immutable after construction. The constructor verifies orthonormality of
/// psi_0 .. psi_{N_A-1} on [0, 1] to 1e-10 and throws InternalConsistency
/// otherwise.
class JacobiKernel {
 public:
  JacobiKernel(int n_a, int delta);

  int n_a() const { return n_a_; }
  int delta() const { return delta_; }

  /// log c_j, valid for any j >= 0.
  double log_norm(int j) const;
  double norm(int j) const;

  double psi(int j, double x) const;

  /// psi_0(x) .. psi_{count-1}(x) into `out`.
  void psi_all(int count, double x, std::vector<double>& out) const;

  double kernel(double x, double y) const;
  double level_density(double x) const;

  /// Composite rule on [0, 1] with panels graded toward x = 1.
  const QuadratureRule& quadrature() const { return rule_; }
  std::size_t points_per_panel() const { return points_per_panel_; }

  /// Largest |int psi_i psi_j - delta_ij| seen by the construction check.
  double orthonormality_error() const { return ortho_error_; }

 private:
  int n_a_;
  int delta_;
  std::size_t points_per_panel_;
  std::vector<double> log_c_;
  QuadratureRule rule_;
  double ortho_error_ = 0.0;
};

/// Level density sampled on a grid.
struct SpectralDensity {
  std::vector<double> grid;
  std::vector<double> values;
};

SpectralDensity tabulate_density(const JacobiKernel& ctx, std::span<const double> grid);

/// k-point correlation R_k = (N_A - k)!/N_A! det[K(x_a, x_b)], 1 <= k <= N_A.
/// k = N_A gives the joint density of all singular values.
double correlation_k(const JacobiKernel& ctx, std::span<const double> points);

/// Joint density of the N_A singular values written directly as
/// det(X)^2 / N_A! * prod_j (1 - x_j^2)^delta / c_j with X_ij = p_j(x_i).
double joint_density(const JacobiKernel& ctx, std::span<const double> x);

/// N_A * int_0^1 s(x) rho(x) dx. Doubles the per-panel node count until two
/// successive values differ by less than 1e-10 (at most six doublings,
/// otherwise AccuracyError).
double average_entropy_quadrature(const JacobiKernel& ctx);

/// int_0^1 s(x) psi_i(x) psi_j(x) dx for any i, j >= 0, same refinement.
double s_ij_quadrature(const JacobiKernel& ctx, int i, int j);

/// Exact finite-N variance sum_{i < N_A} sum_{j >= N_A} s^2_ij using the
/// closed-form matrix elements. Each row is truncated once the extrapolated
/// tail drops below tail_tol / N_A.
double variance_finite_n(const JacobiKernel& ctx, double tail_tol = 1e-10);

/// Same sum without building the wavefunction context.
double variance_finite_n(int n_a, int delta, double tail_tol = 1e-10);

}  // namespace gpage
