#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace gpage {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Reproducible random stream keyed by (seed, stream id).
///
/// Two streams built from the same pair produce identical draws. Distinct
/// stream ids are decorrelated through std::seed_seq, which is how parallel
/// Monte Carlo workers get independent sequences without sharing state.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::mt19937_64& engine() { return engine_; }

  double normal();
  double uniform();  // [0, 1)
  bool bit();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Largest absolute entry; the scale used by all hybrid tolerances here.
double max_abs(const Matrix& m);

/// Matrix of independent standard normal entries.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

/// Haar-distributed element of O(dim).
///
/// QR of a Ginibre matrix, with the columns of Q rescaled by sign(R_ii) so
/// that R has a positive diagonal. Without that correction the factorization
/// is orthogonal but not Haar. Both connected components of O(dim) are hit.
/// Throws InvalidArgument for dim == 0 or odd dim.
Matrix haar_orthogonal(Eigen::Index dim, RngStream& rng);

/// Haar-distributed element of U(dim) (complex QR with phase correction).
ComplexMatrix haar_unitary(Eigen::Index dim, RngStream& rng);

struct SymEigen {
  Vector values;   // descending
  Matrix vectors;  // columns are eigenvectors, orthonormal
};

/// Eigendecomposition of a real symmetric matrix, eigenvalues descending.
/// Throws InvalidArgument if `s` is not square or not symmetric within
/// 1e-10 relative to max_abs(s).
SymEigen sym_eigen(const Matrix& s);

struct AntisymCanonical {
  Matrix rotation;              // M with M h M^T = canonical block form
  std::vector<double> omegas;   // dim/2 non-negative values, descending
};

/// Orthogonal block-diagonalization of a real antisymmetric matrix:
///   M h M^T = diag([[0, w_1], [-w_1, 0]], ..., [[0, w_n], [-w_n, 0]])
/// with w_1 >= ... >= w_n >= 0. Blocks are in the interleaved ordering
/// (rows 2i, 2i+1 of M span block i).
AntisymCanonical antisym_canonical(const Matrix& h);

/// The canonical block matrix built from a list of omegas.
Matrix canonical_blocks(const std::vector<double>& omegas);

}  // namespace gpage
