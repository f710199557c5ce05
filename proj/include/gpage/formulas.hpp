#pragma once

namespace gpage {

enum class CurveKind { Mean, Std, MeanPerMode };

/// One tabulated value of a Page-type curve.
struct CurvePoint {
  int n = 0;
  int n_a = 0;
  double f = 0.0;
  double value = 0.0;
  CurveKind kind = CurveKind::Mean;
};

// --- Haar-random pure states ------------------------------------------------

/// Exact mean entanglement entropy of a Haar-random pure state of N modes,
///   Psi(2^N + 1) - Psi(2^{N_B} + 1) - (2^{N_A} - 1) / 2^{N_B + 1}.
/// Requires 0 <= N_A <= N_B and N <= 1024. Above 2^50 the digamma values are
/// taken from the log-domain asymptotic expansion, so 2^N is never formed.
double page_average_exact(int n, int n_a);

/// f N log 2 - exp(-(1 - 2f) N log 2) / 2, for 0 < f <= 1/2.
double page_thermo(int n, double f);

/// 2^{-(1-f)N - 1/2} for f < 1/2 and 2^{-N/2 - 1} at f = 1/2.
double page_std_thermo(int n, double f);

// --- Gaussian states --------------------------------------------------------

/// Exact mean entanglement entropy over Haar-random fermionic Gaussian states:
///   (N - 1/2) Psi(2N) + (1/2 + N_A - N) Psi(2N - 2N_A)
///     + (1/4 - N_A) Psi(N) - Psi(N - N_A) / 4 - N_A.
/// The expression holds for N_A <= N_B; larger subsystems are mapped to their
/// complement. Accepts 0 <= N_A <= N.
double gaussian_average_exact(int n, int n_a);

/// Two-order thermodynamic expansion, 0 < f < 1:
///   N ((log 2 - 1) f + (f - 1) log(1 - f)) + f/2 + log(1 - f)/4.
double gaussian_thermo(int n, double f);

/// Large-N variance (f + f^2 + log(1 - f)) / 2, for 0 < f <= 1/2.
double gaussian_variance_limit(double f);

/// Square root of gaussian_variance_limit.
double gaussian_std_limit(double f);

/// Limit of s^2_{N_A-1-l, N_A+k} at fixed f = N_A / N. Returns the square.
double sbar_lk(int l, int k, double f);

/// Squared matrix element s^2_ij of the entropy function between the
/// orthonormal wavefunctions i < j of the Jacobi ensemble with parameter
/// delta. Factorials are combined in log space.
double s2_closed_form(int i, int j, int delta);

/// Leading entropy density (log 2 - 1) f + (f - 1) log(1 - f), 0 <= f <= 1/2.
double lrv_density(double f);

}  // namespace gpage
