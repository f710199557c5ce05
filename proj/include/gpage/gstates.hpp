#pragma once

#include <vector>

#include "gpage/linalg.hpp"

namespace gpage {

/// Bipartition bookkeeping for N modes split into A (first n_a) and B.
struct SystemSplit {
  int n = 0;
  int n_a = 0;

  SystemSplit(int total_modes, int subsystem_modes);

  int n_b() const { return n - n_a; }
  int delta() const { return n_b() - n_a; }
  double fraction() const { return static_cast<double>(n_a) / n; }
};

/// Real antisymmetric orthogonal 2N x 2N matrix labelling a pure fermionic
/// Gaussian state. Majorana modes use the split ordering
/// (xi_1 .. xi_N, xi_{N+1} .. xi_{2N}), where xi_i and xi_{N+i} belong to
/// mode i.
class ComplexStructure {
 public:
  /// Validates J^T = -J and J J^T = 1 within 1e-10.
  explicit ComplexStructure(Matrix j);

  int modes() const { return static_cast<int>(j_.rows() / 2); }
  const Matrix& matrix() const { return j_; }

 private:
  Matrix j_;
};

/// Singular values of the subsystem block, each in [0, 1], descending.
struct RestrictedSpectrum {
  std::vector<double> x;
};

/// J_0 = [[0, 1_N], [-1_N, 0]].
ComplexStructure reference_structure(int n);

/// J = M J_0 M^T.
ComplexStructure conjugate(const ComplexStructure& j0, const Matrix& m);

/// Majorana representation of the Bogoliubov map a'_i = alpha_ij a_j + beta_ij a_j^dag:
///   M = [[Re(alpha + beta), Im(beta - alpha)], [Im(alpha + beta), Re(alpha - beta)]].
/// Throws ConstraintViolation if M is not orthogonal within 1e-8.
Matrix bogoliubov_to_orthogonal(const ComplexMatrix& alpha, const ComplexMatrix& beta);

/// Rows/columns {0..n_a-1} and {N..N+n_a-1} of J.
Matrix subsystem_block(const ComplexStructure& j, const SystemSplit& split);

/// Paired singular values of the subsystem block. They come from the
/// eigenvalues of B^T B, which occur with multiplicity two; each pair is
/// averaged and values within 1e-9 outside [0, 1] are clamped.
RestrictedSpectrum restrict(const ComplexStructure& j, const SystemSplit& split);

/// Single-pair entropy s(x) in nats, with 0 log 0 = 0.
double pair_entropy(double x);

/// Sum of pair_entropy over the spectrum. Throws InvalidArgument for x
/// outside [0, 1] by more than 1e-9.
double entropy_from_spectrum(const RestrictedSpectrum& spectrum);

/// Convenience: entropy of subsystem A of the Gaussian state J.
double gaussian_entropy(const ComplexStructure& j, const SystemSplit& split);

}  // namespace gpage
