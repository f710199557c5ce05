#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpage/errors.hpp"
#include "gpage/linalg.hpp"
#include "gpage/special.hpp"

using namespace gpage;

// Reference values below were computed with mpmath at 50 significant digits.

TEST_CASE("digamma special values") {
  CHECK(std::abs(digamma(1.0) + 0.5772156649015329) <= 1e-12);
  CHECK(std::abs(digamma(0.5) + 1.9635100260214235) <= 1e-12);
  CHECK(std::abs(digamma(0.5) - (-kEulerGamma - 2.0 * std::numbers::ln2)) <= 1e-12);
}

TEST_CASE("digamma against high-precision values") {
  struct Ref {
    double z;
    double value;
  };
  const Ref refs[] = {
      {0.1, -10.423754940411076795},  {1e-3, -1000.5755719318103005},
      {2.5, 0.70315664064524318723},  {7.3, 1.9178203356379860984},
      {9.99, 2.2507003728312010995},  {10.0, 2.2517525890667211076},
      {123.456, 4.8118293238289853873}, {1e6, 13.815510057964190771},
  };
  for (const auto& r : refs) {
    CAPTURE(r.z);
    CHECK(std::abs(digamma(r.z) - r.value) <= 1e-12);
  }
}

TEST_CASE("digamma functional equation and integer values") {
  for (double z : {0.5, 1.0, 3.25}) CHECK(std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) <= 1e-12);
  double harmonic = 0.0;
  for (int m = 1; m <= 100; ++m) {
    CAPTURE(m);
    CHECK(std::abs(digamma(m) - (-kEulerGamma + harmonic)) <= 1e-12);
    harmonic += 1.0 / m;
  }
}

TEST_CASE("digamma and log_gamma reject non-positive arguments") {
  CHECK_THROWS_AS(digamma(0.0), InvalidArgument);
  CHECK_THROWS_AS(digamma(-2.5), InvalidArgument);
  CHECK_THROWS_AS(digamma(std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(log_gamma(0.0), InvalidArgument);
  CHECK_THROWS_AS(log_gamma(-1.0), InvalidArgument);
}

TEST_CASE("log_gamma values") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) <= 1e-12 * std::log(24.0));
  struct Ref {
    double z;
    double value;
  };
  const Ref refs[] = {
      {10.5, 13.940625219403763633}, {0.1, 2.2527126517342059599},
      {3.7, 1.4280723266653879219},  {1e-3, 6.9071788853838536825},
      {1234.5, 7550.5509010778948957}, {1e5, 1051287.7089736568949},
  };
  for (const auto& r : refs) {
    CAPTURE(r.z);
    CHECK(std::abs(log_gamma(r.z) - r.value) <= 1e-12 * std::abs(r.value));
  }
}

TEST_CASE("jacobi_poly low degrees") {
  CHECK(jacobi_poly(0, 3.0, 1.5, 0.7) == 1.0);
  CHECK(jacobi_poly(2, 0.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jacobi_poly(1, 2.0, 2.0, 0.3) == doctest::Approx(0.9).epsilon(1e-15));
  // Legendre P_3(x) = (5x^3 - 3x) / 2
  const double x = 0.37;
  CHECK(jacobi_poly(3, 0.0, 0.0, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-14));
}

TEST_CASE("jacobi_poly endpoint value is a binomial coefficient") {
  // P_n^{(a,b)}(1) = Gamma(n + a + 1) / (Gamma(n + 1) Gamma(a + 1))
  for (int n : {5, 40, 200, 500}) {
    for (double a : {0.0, 3.0, 17.0}) {
      const double expected =
          std::exp(std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0) - std::lgamma(a + 1.0));
      CAPTURE(n);
      CAPTURE(a);
      CHECK(std::abs(jacobi_poly(n, a, a, 1.0) - expected) <= 1e-11 * expected);
    }
  }
}

TEST_CASE("jacobi_poly matches the three-term recurrence at random points") {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 300);
    const double a = std::floor(rng.uniform() * 51);
    const double x = 2.0 * rng.uniform() - 1.0;
    const double pn = jacobi_poly(n, a, a, x);
    const double pn1 = jacobi_poly(n - 1, a, a, x);
    const double pn2 = jacobi_poly(n - 2, a, a, x);
    const double s = 2.0 * n + 2.0 * a;
    const double lhs = 2.0 * n * (n + 2.0 * a) * (s - 2.0) * pn;
    const double rhs = (s - 1.0) * s * (s - 2.0) * x * pn1 - 2.0 * (n + a - 1.0) * (n + a - 1.0) * s * pn2;
    const double scale = std::abs(2.0 * n * (n + 2.0 * a) * (s - 2.0)) *
                         (std::abs(pn) + std::abs(pn1) + std::abs(pn2) + 1e-300);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * scale);
  }
}

TEST_CASE("gauss_legendre basic rules") {
  const QuadratureRule one = gauss_legendre(1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), InvalidArgument);

  const QuadratureRule three = gauss_legendre(3);
  CHECK(std::abs(three.integrate([](double x) { return x * x * x * x; }) - 0.4) <= 1e-13);
}

TEST_CASE("gauss_legendre weights sum to two and integrate up to degree 2n-1") {
  for (std::size_t n : {2u, 7u, 16u, 64u, 200u, 1000u}) {
    const QuadratureRule rule = gauss_legendre(n);
    double sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      sum += w;
    }
    CAPTURE(n);
    CHECK(std::abs(sum - 2.0) <= 1e-13);
    for (double x : rule.nodes) CHECK(std::abs(x) < 1.0);
    const int deg = static_cast<int>(2 * n - 2);  // even, exact value 2/(deg+1)
    CHECK(std::abs(rule.integrate([deg](double x) { return std::pow(x, deg); }) - 2.0 / (deg + 1)) <=
          1e-13);
  }
}

TEST_CASE("mapped and graded rules have unit length on [0, 1]") {
  const QuadratureRule mapped = map_rule(gauss_legendre(20), 0.0, 1.0);
  CHECK(std::abs(mapped.integrate([](double) { return 1.0; }) - 1.0) <= 1e-13);
  const QuadratureRule graded = graded_unit_rule(30, 32);
  CHECK(std::abs(graded.integrate([](double) { return 1.0; }) - 1.0) <= 1e-13);
  for (double x : graded.nodes) CHECK((x > 0.0 && x < 1.0));
  // (1 - x) log(1 - x) has a log singularity in its derivative at 1;
  // exact integral is -1/4.
  const double v = graded.integrate([](double x) { return (1.0 - x) * std::log1p(-x); });
  CHECK(std::abs(v + 0.25) <= 1e-13);
}
