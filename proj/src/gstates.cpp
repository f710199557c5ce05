#include "gpage/gstates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gpage/errors.hpp"

namespace gpage {

namespace {

constexpr double kClampWindow = 1e-9;
constexpr double kPairTolerance = 1e-8;

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

SystemSplit::SystemSplit(int total_modes, int subsystem_modes)
    : n(total_modes), n_a(subsystem_modes) {
  if (n < 1) throw InvalidArgument("SystemSplit: need at least one mode");
  if (n_a < 0 || n_a > n)
    throw InvalidArgument("SystemSplit: subsystem size " + std::to_string(n_a) +
                          " outside [0, " + std::to_string(n) + "]");
}

ComplexStructure::ComplexStructure(Matrix j) : j_(std::move(j)) {
  if (j_.rows() != j_.cols() || j_.rows() == 0 || j_.rows() % 2 != 0)
    throw InvalidArgument("ComplexStructure: matrix must be square with even dimension");
  if (max_abs(j_ + j_.transpose()) > 1e-10)
    throw InvalidArgument("ComplexStructure: matrix is not antisymmetric");
  const auto dim = j_.rows();
  if (max_abs(j_ * j_.transpose() - Matrix::Identity(dim, dim)) > 1e-10)
    throw InvalidArgument("ComplexStructure: matrix is not orthogonal");
}

ComplexStructure reference_structure(int n) {
  if (n < 1) throw InvalidArgument("reference_structure: need at least one mode");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return ComplexStructure(std::move(j));
}

ComplexStructure conjugate(const ComplexStructure& j0, const Matrix& m) {
  if (m.rows() != j0.matrix().rows() || m.cols() != j0.matrix().cols())
    throw InvalidArgument("conjugate: dimension mismatch");
  Matrix j = m * j0.matrix() * m.transpose();
  // Remove the O(eps) symmetric part so the invariants hold to rounding.
  j = 0.5 * (j - j.transpose()).eval();
  return ComplexStructure(std::move(j));
}

Matrix bogoliubov_to_orthogonal(const ComplexMatrix& alpha, const ComplexMatrix& beta) {
  const auto n = alpha.rows();
  if (alpha.cols() != n || beta.rows() != n || beta.cols() != n || n == 0)
    throw InvalidArgument("bogoliubov_to_orthogonal: alpha and beta must be N x N");
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = (alpha + beta).real();
  m.topRightCorner(n, n) = (beta - alpha).imag();
  m.bottomLeftCorner(n, n) = (alpha + beta).imag();
  m.bottomRightCorner(n, n) = (alpha - beta).real();
  if (max_abs(m * m.transpose() - Matrix::Identity(2 * n, 2 * n)) > 1e-8)
    throw ConstraintViolation(
        "bogoliubov_to_orthogonal: (alpha, beta) does not preserve the anticommutation relations");
  return m;
}

Matrix subsystem_block(const ComplexStructure& j, const SystemSplit& split) {
  const int n = j.modes();
  if (n != split.n) throw InvalidArgument("restrict: split does not match the state size");
  const int na = split.n_a;
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(2 * na));
  for (int i = 0; i < na; ++i) idx.push_back(i);
  for (int i = 0; i < na; ++i) idx.push_back(n + i);
  return j.matrix()(idx, idx);
}

RestrictedSpectrum restrict(const ComplexStructure& j, const SystemSplit& split) {
  if (split.n_a < 1) throw InvalidArgument("restrict: subsystem must contain at least one mode");
  const Matrix block = subsystem_block(j, split);
  Matrix gram = block.transpose() * block;
  gram = 0.5 * (gram + gram.transpose()).eval();
  const SymEigen eig = sym_eigen(gram);

  RestrictedSpectrum out;
  out.x.reserve(static_cast<std::size_t>(split.n_a));
  for (int k = 0; k < split.n_a; ++k) {
    const double first = eig.values(2 * k);
    const double second = eig.values(2 * k + 1);
    if (std::abs(first - second) > kPairTolerance)
      throw InternalConsistency("restrict: singular values of the subsystem block are not paired");
    double sq = 0.5 * (first + second);
    if (sq < -kClampWindow || sq > 1.0 + kClampWindow)
      throw InternalConsistency("restrict: singular value outside [0, 1]");
    sq = std::clamp(sq, 0.0, 1.0);
    out.x.push_back(std::min(std::sqrt(sq), 1.0));
  }
  return out;
}

double pair_entropy(double x) {
  const double minus = 0.5 * (1.0 - x);
  const double plus = 0.5 * (1.0 + x);
  return -xlogx(minus) - xlogx(plus);
}

double entropy_from_spectrum(const RestrictedSpectrum& spectrum) {
  double s = 0.0;
  for (double x : spectrum.x) {
    if (x < -kClampWindow || x > 1.0 + kClampWindow || std::isnan(x))
      throw InvalidArgument("entropy_from_spectrum: value outside [0, 1]");
    s += pair_entropy(std::clamp(x, 0.0, 1.0));
  }
  return s;
}

double gaussian_entropy(const ComplexStructure& j, const SystemSplit& split) {
  if (split.n_a == 0 || split.n_a == split.n) return 0.0;
  // The complement has the same entropy; use the smaller block.
  if (split.n_a > split.n_b()) {
    const int n = split.n;
    std::vector<Eigen::Index> perm;
    perm.reserve(static_cast<std::size_t>(2 * n));
    // Reorder modes so B's modes come first.
    for (int i = split.n_a; i < n; ++i) perm.push_back(i);
    for (int i = 0; i < split.n_a; ++i) perm.push_back(i);
    for (int i = split.n_a; i < n; ++i) perm.push_back(n + i);
    for (int i = 0; i < split.n_a; ++i) perm.push_back(n + i);
    ComplexStructure swapped(j.matrix()(perm, perm));
    return entropy_from_spectrum(restrict(swapped, SystemSplit(n, split.n_b())));
  }
  return entropy_from_spectrum(restrict(j, split));
}

}  // namespace gpage
