#include "gpage/formulas.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gpage/errors.hpp"
#include "gpage/special.hpp"

namespace gpage {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Psi(2^k + 1).
double digamma_pow2_plus_one(int k) {
  if (k <= 50) return digamma(std::ldexp(1.0, k) + 1.0);
  // Psi(z + 1) = log z + 1/(2z) - 1/(12 z^2) + ...; beyond 2^50 the
  // remaining terms are far below double resolution.
  return k * kLn2 + std::ldexp(0.5, -k);
}

void require_fraction(double f, double lo, bool lo_open, double hi, bool hi_open,
                      const char* who) {
  const bool low_ok = lo_open ? f > lo : f >= lo;
  const bool high_ok = hi_open ? f < hi : f <= hi;
  if (!(low_ok && high_ok)) throw InvalidArgument(std::string(who) + ": fraction out of range");
}

bool is_half(double f) { return std::abs(f - 0.5) <= 1e-15; }

}  // namespace

double page_average_exact(int n, int n_a) {
  if (n < 1 || n > 1024) throw InvalidArgument("page_average_exact: N must be in [1, 1024]");
  if (n_a < 0 || n_a > n - n_a)
    throw InvalidArgument("page_average_exact: requires 0 <= N_A <= N_B");
  if (n_a == 0) return 0.0;
  const int n_b = n - n_a;
  const double tail = std::ldexp(1.0, n_a - n_b - 1) - std::ldexp(1.0, -n_b - 1);
  return digamma_pow2_plus_one(n) - digamma_pow2_plus_one(n_b) - tail;
}

double page_thermo(int n, double f) {
  require_fraction(f, 0.0, true, 0.5, false, "page_thermo");
  return f * n * kLn2 - 0.5 * std::exp(-(1.0 - 2.0 * f) * n * kLn2);
}

double page_std_thermo(int n, double f) {
  require_fraction(f, 0.0, true, 0.5, false, "page_std_thermo");
  if (is_half(f)) return std::exp2(-0.5 * n - 1.0);
  return std::exp2(-(1.0 - f) * n - 0.5);
}

double gaussian_average_exact(int n, int n_a) {
  if (n < 1) throw InvalidArgument("gaussian_average_exact: need N >= 1");
  if (n_a < 0 || n_a > n) throw InvalidArgument("gaussian_average_exact: N_A outside [0, N]");
  if (n_a > n - n_a) n_a = n - n_a;
  if (n_a == 0) return 0.0;
  const double nn = n;
  const double na = n_a;
  return (nn - 0.5) * digamma(2.0 * nn) + (0.5 + na - nn) * digamma(2.0 * (nn - na)) +
         (0.25 - na) * digamma(nn) - 0.25 * digamma(nn - na) - na;
}

double gaussian_thermo(int n, double f) {
  require_fraction(f, 0.0, true, 1.0, true, "gaussian_thermo");
  const double log1mf = std::log1p(-f);
  return n * ((kLn2 - 1.0) * f + (f - 1.0) * log1mf) + 0.5 * f + 0.25 * log1mf;
}

double gaussian_variance_limit(double f) {
  require_fraction(f, 0.0, true, 0.5, false, "gaussian_variance_limit");
  return 0.5 * (f + f * f + std::log1p(-f));
}

double gaussian_std_limit(double f) { return std::sqrt(gaussian_variance_limit(f)); }

double sbar_lk(int l, int k, double f) {
  if (l < 0 || k < 0) throw InvalidArgument("sbar_lk: indices must be >= 0");
  require_fraction(f, 0.0, true, 1.0, true, "sbar_lk");
  const double m = static_cast<double>(k) + l + 1.0;
  const double odd_lo = 2.0 * (k + l) + 1.0;
  const double odd_hi = 2.0 * (k + l) + 3.0;
  const double top = odd_hi - 4.0 * f * m;
  // (1/f - 1)^{-2m} = (f / (1 - f))^{2m}
  const double decay = std::exp(2.0 * m * (std::log(f) - std::log1p(-f)));
  return decay * top * top / (4.0 * m * m * odd_lo * odd_lo * odd_hi * odd_hi);
}

double s2_closed_form(int i, int j, int delta) {
  if (i < 0 || delta < 0) throw InvalidArgument("s2_closed_form: indices must be >= 0");
  if (i >= j) throw InvalidArgument("s2_closed_form: requires i < j");
  const double di = i;
  const double dj = j;
  const double dd = delta;
  const double poly = (1.0 + dd - 2.0 * dd * dd) * di - 2.0 * (dd - 1.0) * di * di +
                      (dd + 1.0) * (2.0 * dj + 1.0) * (dd + dj);
  if (poly == 0.0) return 0.0;

  double log_num = log_gamma(2.0 * dj + 1.0) + std::log(2.0 * dd + 4.0 * di + 1.0) +
                   std::log(dd + dj + 1.0) + std::log(2.0 * dd + 2.0 * dj + 1.0) +
                   std::log(2.0 * dd + 4.0 * dj + 1.0) + log_gamma(2.0 * (dd + di) + 1.0) +
                   2.0 * std::log(std::abs(poly));
  double log_den = std::log(2.0) + log_gamma(2.0 * di + 1.0) +
                   2.0 * std::log(std::abs(2.0 * di - 2.0 * dj + 1.0)) +
                   2.0 * std::log(dj - di) + 2.0 * std::log(2.0 * dj - 2.0 * di + 1.0) +
                   log_gamma(2.0 * (dd + dj + 1.0) + 1.0) + 2.0 * std::log(dd + di + dj) +
                   2.0 * std::log(dd + di + dj + 1.0) +
                   2.0 * std::log(2.0 * dd + 2.0 * di + 2.0 * dj + 1.0);
  return std::exp(log_num - log_den);
}

double lrv_density(double f) {
  require_fraction(f, 0.0, false, 0.5, false, "lrv_density");
  return (kLn2 - 1.0) * f + (f - 1.0) * std::log1p(-f);
}

}  // namespace gpage
