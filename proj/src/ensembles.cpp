#include "gpage/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "gpage/errors.hpp"

namespace gpage {

namespace {

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log1p(-p);
  return s;
}

}  // namespace

ComplexStructure sample_gaussian_state(int n, RngStream& rng) {
  if (n < 1) throw InvalidArgument("sample_gaussian_state: need at least one mode");
  return conjugate(reference_structure(n), haar_orthogonal(2 * n, rng));
}

QuadraticHamiltonian make_hamiltonian(const Matrix& h) {
  AntisymCanonical canon = antisym_canonical(h);
  return {static_cast<int>(h.rows() / 2), h, std::move(canon.rotation), std::move(canon.omegas)};
}

QuadraticHamiltonian sample_random_hamiltonian(int n, RngStream& rng, double scale) {
  if (n < 1) throw InvalidArgument("sample_random_hamiltonian: need at least one mode");
  const Matrix g = gaussian_matrix(2 * n, 2 * n, rng);
  Matrix h = 0.5 * scale * (g - g.transpose());
  return make_hamiltonian(h);
}

std::vector<Eigen::Index> interleaved_to_split(int n) {
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    perm[static_cast<std::size_t>(2 * i)] = i;
    perm[static_cast<std::size_t>(2 * i + 1)] = n + i;
  }
  return perm;
}

ComplexStructure eigenstate_structure(const QuadraticHamiltonian& ham,
                                      const OccupationPattern& occ) {
  const int n = ham.n;
  if (static_cast<int>(occ.bits.size()) != n || ham.rotation.rows() != 2 * n)
    throw InvalidArgument("eigenstate_structure: occupation pattern has " +
                          std::to_string(occ.bits.size()) + " entries for " + std::to_string(n) +
                          " modes");
  // J_0 seen in the interleaved ordering is a chain of [[0, 1], [-1, 0]]
  // blocks; an occupied canonical mode reverses its block.
  const auto perm = interleaved_to_split(n);
  Matrix blocks = reference_structure(n).matrix()(perm, perm);
  for (int i = 0; i < n; ++i) {
    if (occ.bits[static_cast<std::size_t>(i)] != 0) {
      blocks(2 * i, 2 * i + 1) = -blocks(2 * i, 2 * i + 1);
      blocks(2 * i + 1, 2 * i) = -blocks(2 * i + 1, 2 * i);
    }
  }
  // Rotated Majoranas are xi' = M xi, so J = M^T J' M.
  Matrix j = ham.rotation.transpose() * blocks * ham.rotation;
  j = 0.5 * (j - j.transpose()).eval();
  return ComplexStructure(std::move(j));
}

double eigenstate_energy(const QuadraticHamiltonian& ham, const OccupationPattern& occ) {
  if (static_cast<int>(occ.bits.size()) != ham.n)
    throw InvalidArgument("eigenstate_energy: occupation pattern size mismatch");
  double e = 0.0;
  for (int i = 0; i < ham.n; ++i)
    e += ham.omegas[static_cast<std::size_t>(i)] *
         (occ.bits[static_cast<std::size_t>(i)] != 0 ? 1.0 : -1.0);
  return e;
}

QuadraticHamiltonian from_particle_basis(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto n = a.rows();
  if (n == 0 || a.cols() != n || b.rows() != n || b.cols() != n)
    throw InvalidArgument("from_particle_basis: A and B must be N x N");
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("from_particle_basis: A is not Hermitian");
  if ((b + b.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("from_particle_basis: B is not antisymmetric");

  // a_i = sum_mu u_{i mu} xi_mu, a_i^dag = sum_mu conj(u_{i mu}) xi_mu.
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix u = ComplexMatrix::Zero(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u(i, i) = {r, 0.0};
    u(i, n + i) = {0.0, r};
  }
  const ComplexMatrix ubar = u.conjugate();
  // H = xi^T C xi; only the antisymmetric part of C survives, C_A = i h.
  const ComplexMatrix c = u.adjoint() * a * u + u.adjoint() * b * ubar +
                          u.transpose() * b.adjoint() * u;
  const ComplexMatrix ih = 0.5 * (c - c.transpose());
  if (ih.real().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InternalConsistency("from_particle_basis: Majorana coefficients are not real");
  Matrix h = ih.imag();
  return make_hamiltonian(h);
}

OccupationPattern sample_occupation(int n, RngStream& rng) {
  OccupationPattern occ;
  occ.bits.resize(static_cast<std::size_t>(n));
  for (auto& bit : occ.bits) bit = rng.bit() ? 1 : 0;
  return occ;
}

PureStateVector sample_haar_pure_state(int n, RngStream& rng) {
  if (n < 1) throw InvalidArgument("sample_haar_pure_state: need at least one mode");
  if (n > kMaxPureStateModes)
    throw ResourceLimit("sample_haar_pure_state: N = " + std::to_string(n) + " exceeds the limit " +
                        std::to_string(kMaxPureStateModes));
  const Eigen::Index dim = Eigen::Index{1} << n;
  PureStateVector psi{n, Eigen::VectorXcd(dim)};
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    psi.amplitudes(k) = {re, im};
  }
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

double entanglement_entropy_pure(const PureStateVector& psi, int n_a) {
  if (n_a < 0 || n_a > psi.n)
    throw InvalidArgument("entanglement_entropy_pure: subsystem size out of range");
  if (n_a == 0 || n_a == psi.n) return 0.0;
  const Eigen::Index dim_a = Eigen::Index{1} << n_a;
  const Eigen::Index dim_b = Eigen::Index{1} << (psi.n - n_a);
  // Row-major reshape: row a, column b.
  const Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
      amp(psi.amplitudes.data(), dim_a, dim_b);
  ComplexMatrix rho = dim_a <= dim_b ? ComplexMatrix(amp * amp.adjoint())
                                     : ComplexMatrix(amp.transpose() * amp.conjugate());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double number_conserving_entropy(const ComplexMatrix& u, const OccupationPattern& occ, int n_a) {
  const auto n = u.rows();
  if (u.cols() != n || static_cast<Eigen::Index>(occ.bits.size()) != n)
    throw InvalidArgument("number_conserving_entropy: dimension mismatch");
  if (n_a < 0 || n_a > n) throw InvalidArgument("number_conserving_entropy: bad subsystem size");
  if (n_a == 0) return 0.0;
  Eigen::VectorXd filling(n);
  for (Eigen::Index k = 0; k < n; ++k) filling(k) = occ.bits[static_cast<std::size_t>(k)];
  const auto lead = u.topRows(n_a);
  const ComplexMatrix corr = lead * filling.asDiagonal() * lead.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(corr, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) s += binary_entropy(std::clamp(lambda, 0.0, 1.0));
  return s;
}

double sample_number_conserving_eigenstate(int n, int n_a, RngStream& rng) {
  if (n < 2) throw InvalidArgument("sample_number_conserving_eigenstate: need N >= 2");
  const ComplexMatrix u = haar_unitary(n, rng);
  const OccupationPattern occ = sample_occupation(n, rng);
  return number_conserving_entropy(u, occ, n_a);
}

std::string_view ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Gaussian: return "gaussian";
    case EnsembleKind::HaarPure: return "haar-pure";
    case EnsembleKind::Hamiltonian: return "hamiltonian";
    case EnsembleKind::NumberConserving: return "number-conserving";
  }
  return "unknown";
}

std::function<double(RngStream&)> entropy_sampler(EnsembleKind kind, int n, int n_a) {
  const SystemSplit split(n, n_a);
  switch (kind) {
    case EnsembleKind::Gaussian:
      return [split](RngStream& rng) {
        return gaussian_entropy(sample_gaussian_state(split.n, rng), split);
      };
    case EnsembleKind::Hamiltonian:
      return [split](RngStream& rng) {
        const QuadraticHamiltonian ham = sample_random_hamiltonian(split.n, rng);
        const OccupationPattern occ = sample_occupation(split.n, rng);
        return gaussian_entropy(eigenstate_structure(ham, occ), split);
      };
    case EnsembleKind::HaarPure:
      if (n > kMaxPureStateModes)
        throw ResourceLimit("haar-pure ensemble limited to N <= " +
                            std::to_string(kMaxPureStateModes));
      return [split](RngStream& rng) {
        return entanglement_entropy_pure(sample_haar_pure_state(split.n, rng), split.n_a);
      };
    case EnsembleKind::NumberConserving:
      if (n < 2) throw InvalidArgument("number-conserving ensemble needs N >= 2");
      return [split](RngStream& rng) {
        return sample_number_conserving_eigenstate(split.n, split.n_a, rng);
      };
  }
  throw InvalidArgument("entropy_sampler: unknown ensemble");
}

}  // namespace gpage
