#include "gpage/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "gpage/errors.hpp"

namespace gpage {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32), 0x9e3779b9u};
  engine_.seed(seq);
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::uniform() { return uniform_(engine_); }

bool RngStream::bit() { return (engine_() >> 63) != 0; }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  Matrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  return g;
}

Matrix haar_orthogonal(Eigen::Index dim, RngStream& rng) {
  if (dim <= 0 || dim % 2 != 0)
    throw InvalidArgument("haar_orthogonal: dimension must be positive and even, got " +
                          std::to_string(dim));
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, dim, rng));
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  return q;
}

ComplexMatrix haar_unitary(Eigen::Index dim, RngStream& rng) {
  if (dim <= 0) throw InvalidArgument("haar_unitary: dimension must be positive");
  ComplexMatrix z(dim, dim);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = {scale * re, scale * im};
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

SymEigen sym_eigen(const Matrix& s) {
  if (s.rows() != s.cols() || s.rows() == 0)
    throw InvalidArgument("sym_eigen: matrix must be square and non-empty");
  const double scale = max_abs(s);
  if (max_abs(s - s.transpose()) > 1e-10 * std::max(scale, 1e-300))
    throw InvalidArgument("sym_eigen: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
  if (solver.info() != Eigen::Success)
    throw InternalConsistency("sym_eigen: eigensolver did not converge");

  // Eigen returns ascending order.
  const Eigen::Index n = s.rows();
  SymEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Matrix canonical_blocks(const std::vector<double>& omegas) {
  const auto n = static_cast<Eigen::Index>(omegas.size());
  Matrix b = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(2 * i, 2 * i + 1) = omegas[static_cast<std::size_t>(i)];
    b(2 * i + 1, 2 * i) = -omegas[static_cast<std::size_t>(i)];
  }
  return b;
}

AntisymCanonical antisym_canonical(const Matrix& h) {
  const Eigen::Index dim = h.rows();
  if (dim != h.cols() || dim == 0 || dim % 2 != 0)
    throw InvalidArgument("antisym_canonical: matrix must be square with even dimension");
  const double scale = max_abs(h);
  if (max_abs(h + h.transpose()) > 1e-10 * std::max(scale, 1e-300))
    throw InvalidArgument("antisym_canonical: matrix is not antisymmetric");

  const Matrix a = 0.5 * (h - h.transpose());
  if (scale == 0.0) {
    return {Matrix::Identity(dim, dim),
            std::vector<double>(static_cast<std::size_t>(dim / 2), 0.0)};
  }

  // A real antisymmetric matrix is normal, so its real Schur form is block
  // diagonal: 2x2 rotation blocks plus 1x1 zero blocks.
  Eigen::RealSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success)
    throw InternalConsistency("antisym_canonical: Schur decomposition did not converge");
  const Matrix& t = schur.matrixT();
  const Matrix& u = schur.matrixU();

  struct Block {
    Eigen::Index first;
    Eigen::Index second;
    double omega;
  };
  std::vector<Block> blocks;
  std::vector<Eigen::Index> singles;
  for (Eigen::Index i = 0; i < dim;) {
    if (i + 1 < dim && t(i + 1, i) != 0.0) {
      const double w = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (w >= 0.0)
        blocks.push_back({i, i + 1, w});
      else
        blocks.push_back({i + 1, i, -w});
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  // Real eigenvalues of an antisymmetric matrix vanish; any pairing of the
  // corresponding Schur vectors spans a (numerically) zero block.
  for (std::size_t k = 0; k + 1 < singles.size(); k += 2) {
    const Eigen::Index p = singles[k];
    const Eigen::Index q = singles[k + 1];
    const double w = u.col(p).dot(a * u.col(q));
    if (w >= 0.0)
      blocks.push_back({p, q, w});
    else
      blocks.push_back({q, p, -w});
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& x, const Block& y) { return x.omega > y.omega; });

  AntisymCanonical out{Matrix(dim, dim), {}};
  out.omegas.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto row = static_cast<Eigen::Index>(2 * b);
    out.rotation.row(row) = u.col(blocks[b].first).transpose();
    out.rotation.row(row + 1) = u.col(blocks[b].second).transpose();
    out.omegas.push_back(blocks[b].omega);
  }

  const Matrix residual = out.rotation * h * out.rotation.transpose() - canonical_blocks(out.omegas);
  if (max_abs(residual) > 1e-9 * scale)
    throw InternalConsistency("antisym_canonical: reconstruction residual too large");
  return out;
}

}  // namespace gpage
