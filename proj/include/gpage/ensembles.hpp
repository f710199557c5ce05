#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "gpage/gstates.hpp"
#include "gpage/linalg.hpp"

namespace gpage {

/// H = sum_{mu,nu} i h_{mu nu} xi_mu xi_nu with h real antisymmetric, stored
/// with its canonical decomposition M h M^T = (+) [[0, w_i], [-w_i, 0]].
/// In the rotated Majoranas the operator reads sum_i w_i (2 n_i - 1).
struct QuadraticHamiltonian {
  int n = 0;
  Matrix h;
  Matrix rotation;
  std::vector<double> omegas;
};

/// Occupation numbers n_i in {0, 1} of the canonical modes of a Hamiltonian.
struct OccupationPattern {
  std::vector<std::uint8_t> bits;
};

/// Normalized state in the 2^N dimensional Fock space. The basis index is
/// a * 2^{N_B} + b when the first N_A modes form subsystem A.
struct PureStateVector {
  int n = 0;
  Eigen::VectorXcd amplitudes;
};

inline constexpr int kMaxPureStateModes = 14;

/// J drawn from the Haar measure on O(2N) acting on J_0.
ComplexStructure sample_gaussian_state(int n, RngStream& rng);

/// Canonical decomposition of a given antisymmetric h.
QuadraticHamiltonian make_hamiltonian(const Matrix& h);

/// h = scale * (G - G^T) / 2 with G a 2N x 2N matrix of independent standard normals.
QuadraticHamiltonian sample_random_hamiltonian(int n, RngStream& rng, double scale = 1.0);

/// Permutation from the interleaved block ordering (xi'_1, xi'_2, ...) used
/// by canonical forms to the split ordering: entry k is the split index of
/// interleaved position k (2i -> i, 2i + 1 -> N + i).
std::vector<Eigen::Index> interleaved_to_split(int n);

/// Complex structure of the eigenstate with the given canonical occupations.
/// All-zero occupations give the ground state.
ComplexStructure eigenstate_structure(const QuadraticHamiltonian& ham,
                                      const OccupationPattern& occ);

/// Energy of that eigenstate: sum_i w_i (2 n_i - 1).
double eigenstate_energy(const QuadraticHamiltonian& ham, const OccupationPattern& occ);

/// Majorana coefficient matrix of
///   H = sum_ij A_ij a_i^dag a_j + sum_ij (B_ij a_i^dag a_j^dag + h.c.)
/// with A Hermitian and B antisymmetric. Equal to sum i h xi xi up to an
/// additive constant.
QuadraticHamiltonian from_particle_basis(const ComplexMatrix& a, const ComplexMatrix& b);

OccupationPattern sample_occupation(int n, RngStream& rng);

/// Haar-random pure state on N <= 14 modes (throws ResourceLimit above).
PureStateVector sample_haar_pure_state(int n, RngStream& rng);

/// Von Neumann entropy (nats) of the first n_a modes of `psi`.
double entanglement_entropy_pure(const PureStateVector& psi, int n_a);

/// Entropy of the leading n_a x n_a block of U diag(occ) U^dag.
double number_conserving_entropy(const ComplexMatrix& u, const OccupationPattern& occ, int n_a);

/// Haar U(N) single-particle basis with uniformly random occupations.
double sample_number_conserving_eigenstate(int n, int n_a, RngStream& rng);

enum class EnsembleKind { Gaussian, HaarPure, Hamiltonian, NumberConserving };

std::string_view ensemble_name(EnsembleKind kind);

/// Draws the entanglement entropy of the first n_a of n modes for one state
/// of the ensemble. Hamiltonian eigenstates use uniformly random occupations.
/// Validates sizes eagerly (ResourceLimit for haar-pure above 14 modes).
std::function<double(RngStream&)> entropy_sampler(EnsembleKind kind, int n, int n_a);

}  // namespace gpage
