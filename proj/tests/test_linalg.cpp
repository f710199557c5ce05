#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpage/errors.hpp"
#include "gpage/linalg.hpp"
#include "gpage/stats.hpp"

using namespace gpage;

namespace {

double orthogonality_error(const Matrix& m) {
  return max_abs(m * m.transpose() - Matrix::Identity(m.rows(), m.cols()));
}

Matrix random_antisymmetric(Eigen::Index dim, RngStream& rng) {
  const Matrix g = gaussian_matrix(dim, dim, rng);
  return 0.5 * (g - g.transpose());
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(7, 3);
  RngStream b(7, 3);
  RngStream c(7, 4);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differs |= x != c.normal();
  }
  CHECK(differs);
}

TEST_CASE("haar_orthogonal is orthogonal with unit determinant") {
  RngStream rng(11, 0);
  for (Eigen::Index dim = 2; dim <= 64; dim += 2) {
    const Matrix m = haar_orthogonal(dim, rng);
    CHECK(orthogonality_error(m) <= 1e-12);
  }
  const Matrix m4 = haar_orthogonal(4, rng);
  CHECK(std::abs(std::abs(m4.determinant()) - 1.0) <= 1e-12);
}

TEST_CASE("haar_orthogonal rejects zero and odd dimensions") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(haar_orthogonal(0, rng), InvalidArgument);
  CHECK_THROWS_AS(haar_orthogonal(5, rng), InvalidArgument);
}

TEST_CASE("haar_orthogonal covers both components of O(6) equally") {
  // 1e4 Bernoulli(1/2) draws: 3 sigma = 3 * 0.5 / 100 = 0.015.
  RngStream rng(2024, 0);
  int positive = 0;
  const int draws = 10000;
  for (int k = 0; k < draws; ++k) positive += haar_orthogonal(6, rng).determinant() > 0.0;
  CHECK(std::abs(positive / static_cast<double>(draws) - 0.5) <= 0.015);
}

TEST_CASE("haar_orthogonal is left invariant") {
  RngStream fixed(99, 0);
  const Matrix q = haar_orthogonal(6, fixed);
  RngStream rng_a(5, 1);
  RngStream rng_b(5, 2);
  std::vector<double> plain;
  std::vector<double> rotated;
  for (int k = 0; k < 10000; ++k) {
    plain.push_back(haar_orthogonal(6, rng_a)(0, 0));
    rotated.push_back((q * haar_orthogonal(6, rng_b))(0, 0));
  }
  CHECK(ks_statistic(plain, rotated) < ks_critical_value(plain.size(), rotated.size(), 0.01));
}

TEST_CASE("haar_unitary is unitary") {
  RngStream rng(3, 0);
  const ComplexMatrix u = haar_unitary(12, rng);
  CHECK((u * u.adjoint() - ComplexMatrix::Identity(12, 12)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("sym_eigen on simple matrices") {
  const SymEigen id = sym_eigen(Matrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(id.values(k) == doctest::Approx(1.0).epsilon(1e-15));

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const SymEigen e = sym_eigen(d);
  CHECK(e.values(0) == doctest::Approx(3.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen residual, ordering and trace on random input") {
  RngStream rng(8, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix g = gaussian_matrix(10, 10, rng);
    const Matrix s = g + g.transpose();
    const SymEigen e = sym_eigen(s);
    const double scale = max_abs(s);
    CHECK(max_abs(s * e.vectors - e.vectors * e.values.asDiagonal()) <= 1e-10 * scale);
    CHECK(std::abs(e.values.sum() - s.trace()) <= 1e-10 * scale);
    for (int k = 0; k + 1 < 10; ++k) CHECK(e.values(k) >= e.values(k + 1));
  }
}

TEST_CASE("sym_eigen rejects non-symmetric input") {
  Matrix m = Matrix::Identity(3, 3);
  m(0, 2) = 0.5;
  CHECK_THROWS_AS(sym_eigen(m), InvalidArgument);
}

TEST_CASE("antisym_canonical of a single block") {
  Matrix h(2, 2);
  h << 0.0, 2.5, -2.5, 0.0;
  const AntisymCanonical c = antisym_canonical(h);
  REQUIRE(c.omegas.size() == 1);
  CHECK(c.omegas[0] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(max_abs(c.rotation.cwiseAbs() - Matrix::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("antisym_canonical of the zero matrix") {
  const AntisymCanonical c = antisym_canonical(Matrix::Zero(4, 4));
  REQUIRE(c.omegas.size() == 2);
  CHECK(c.omegas[0] == 0.0);
  CHECK(c.omegas[1] == 0.0);
  CHECK(orthogonality_error(c.rotation) <= 1e-12);
}

TEST_CASE("antisym_canonical omegas are the paired singular values") {
  RngStream rng(21, 0);
  const Matrix h = random_antisymmetric(8, rng);
  const AntisymCanonical c = antisym_canonical(h);
  // Oracle: eigenvalues of h^T h are omega^2, each twice.
  const SymEigen gram = sym_eigen(h.transpose() * h);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(c.omegas[i] - std::sqrt(gram.values(2 * i))) <= 1e-10);
    CHECK(std::abs(c.omegas[i] - std::sqrt(gram.values(2 * i + 1))) <= 1e-10);
  }
}

TEST_CASE("antisym_canonical reconstructs random inputs") {
  RngStream rng(4, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index dim = 2 + 2 * (trial % 32);
    const Matrix h = random_antisymmetric(dim, rng);
    const AntisymCanonical c = antisym_canonical(h);
    CHECK(orthogonality_error(c.rotation) <= 1e-10);
    CHECK(max_abs(c.rotation * h * c.rotation.transpose() - canonical_blocks(c.omegas)) <=
          1e-9 * max_abs(h));
    for (std::size_t i = 0; i < c.omegas.size(); ++i) {
      CHECK(c.omegas[i] >= 0.0);
      if (i + 1 < c.omegas.size()) CHECK(c.omegas[i] >= c.omegas[i + 1]);
    }
  }
}

TEST_CASE("antisym_canonical handles exact degeneracies and zero modes") {
  // Two identical blocks plus a zero pair, hidden by a rotation.
  RngStream rng(6, 0);
  const Matrix q = haar_orthogonal(6, rng);
  const Matrix h = q.transpose() * canonical_blocks({1.5, 1.5, 0.0}) * q;
  const Matrix hs = 0.5 * (h - h.transpose());
  const AntisymCanonical c = antisym_canonical(hs);
  CHECK(c.omegas[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(c.omegas[1] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(c.omegas[2]) <= 1e-12);
  CHECK(max_abs(c.rotation * hs * c.rotation.transpose() - canonical_blocks(c.omegas)) <= 1e-9);
}

TEST_CASE("antisym_canonical rejects bad input") {
  CHECK_THROWS_AS(antisym_canonical(Matrix::Zero(3, 3)), InvalidArgument);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  CHECK_THROWS_AS(antisym_canonical(m), InvalidArgument);
}
