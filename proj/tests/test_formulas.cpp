#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gpage/errors.hpp"
#include "gpage/formulas.hpp"

using namespace gpage;

namespace {
constexpr double kLn2 = std::numbers::ln2;
}

TEST_CASE("Page average") {
  CHECK(std::abs(page_average_exact(2, 1) - 1.0 / 3.0) <= 1e-12);
  for (int n : {1, 7, 100, 1024}) CHECK(page_average_exact(n, 0) == 0.0);
  // Reference values from a 50-digit evaluation of the digamma expression.
  CHECK(std::abs(page_average_exact(10, 5) - 2.9663054768416137306) <= 1e-12);
  CHECK(std::abs(page_average_exact(20, 10) - 6.4314723619093876275) <= 1e-12);
  CHECK(std::abs(page_average_exact(60, 30) - 20.294415416798359283) <= 1e-11);
  CHECK(std::abs(page_average_exact(100, 20) - 13.862943611198906188) <= 1e-11);
  CHECK(std::abs(page_average_exact(1000, 300) - 207.94415416798359283) <= 1e-10);
  CHECK(std::isfinite(page_average_exact(1024, 512)));
  CHECK_THROWS_AS(page_average_exact(10, 6), InvalidArgument);
  CHECK_THROWS_AS(page_average_exact(1025, 3), InvalidArgument);
  CHECK_THROWS_AS(page_average_exact(10, -1), InvalidArgument);
}

TEST_CASE("Page thermodynamic forms") {
  CHECK(page_thermo(20, 0.5) == doctest::Approx(10 * kLn2 - 0.5).epsilon(1e-14));
  const double lead = 0.25 * 400 * kLn2;
  CHECK(std::abs(page_thermo(400, 0.25) - lead) < 1e-12 * lead);
  CHECK(std::abs(page_average_exact(20, 10) - page_thermo(20, 0.5)) < 0.01);
  CHECK(page_std_thermo(10, 0.5) == doctest::Approx(std::exp2(-6.0)).epsilon(1e-15));
  CHECK(page_std_thermo(20, 0.25) == doctest::Approx(std::exp2(-15.5)).epsilon(1e-15));
  for (double f : {0.01, 0.2, 0.5}) CHECK(page_std_thermo(30, f) > 0.0);
  CHECK_THROWS_AS(page_thermo(10, 0.0), InvalidArgument);
  CHECK_THROWS_AS(page_thermo(10, 0.6), InvalidArgument);
  CHECK_THROWS_AS(page_std_thermo(10, -0.1), InvalidArgument);
}

TEST_CASE("Gaussian average") {
  CHECK(std::abs(gaussian_average_exact(2, 1) - 0.5) <= 1e-12);
  for (int n : {1, 5, 64}) {
    CHECK(std::abs(gaussian_average_exact(n, 0)) <= 1e-12);
    CHECK(std::abs(gaussian_average_exact(n, n)) <= 1e-12);
  }
  struct Ref {
    int n;
    int na;
    double value;
  };
  const Ref refs[] = {
      {4, 2, 0.86666666666666666667},   {8, 4, 1.6301698301698301698},
      {16, 8, 3.1710940968096291363},   {10, 5, 2.0147370603252956194},
      {10, 3, 1.640494636082871377},    {40, 20, 7.8041823258092247956},
      {100, 50, 19.392059377769058218}, {200, 100, 38.706462597105436365},
  };
  for (const auto& r : refs) {
    CAPTURE(r.n);
    CAPTURE(r.na);
    CHECK(std::abs(gaussian_average_exact(r.n, r.na) - r.value) <= 1e-11 * std::max(1.0, r.value));
  }
  CHECK(gaussian_average_exact(10, 7) == gaussian_average_exact(10, 3));
  CHECK_THROWS_AS(gaussian_average_exact(10, 11), InvalidArgument);
  CHECK_THROWS_AS(gaussian_average_exact(0, 0), InvalidArgument);
}

TEST_CASE("Gaussian thermodynamic form") {
  CHECK(lrv_density(0.5) == doctest::Approx(kLn2 - 0.5).epsilon(1e-14));
  CHECK(std::abs(gaussian_thermo(1000, 0.5) / 1000 - (kLn2 - 0.5)) < 1e-3);
  CHECK(std::abs(gaussian_thermo(100, 1e-9)) < 1e-6);
  CHECK_THROWS_AS(gaussian_thermo(10, 0.0), InvalidArgument);
  CHECK_THROWS_AS(gaussian_thermo(10, 1.0), InvalidArgument);

  // Remainder decays like 1/N: frozen gaps from a 50-digit evaluation.
  const double gap100 = gaussian_average_exact(100, 50) - gaussian_thermo(100, 0.5);
  const double gap200 = gaussian_average_exact(200, 100) - gaussian_thermo(200, 0.5);
  CHECK(std::abs(gap100 - 0.000628116914513604) <= 1e-11);
  CHECK(std::abs(gap200 - 0.000313280256360809) <= 1e-11);
  CHECK(gap100 / gap200 >= 1.6);
  CHECK(gap100 / gap200 <= 2.4);
}

TEST_CASE("approach to the thermodynamic limit is from above") {
  double previous = INFINITY;
  for (int n : {8, 16, 32, 64, 128}) {
    const double gap = gaussian_average_exact(n, n / 2) - gaussian_thermo(n, 0.5);
    CAPTURE(n);
    CHECK(gap > 0.0);
    CHECK(gap < previous);
    previous = gap;
  }
}

TEST_CASE("Gaussian versus Page crossover") {
  CHECK(gaussian_average_exact(2, 1) > page_average_exact(2, 1));
  CHECK(gaussian_average_exact(40, 20) < page_average_exact(40, 20));
}

TEST_CASE("bounds and monotonicity in N_A") {
  for (int n = 2; n <= 128; ++n) {
    double prev_g = 0.0;
    double prev_p = 0.0;
    for (int na = 1; na <= n / 2; ++na) {
      const double g = gaussian_average_exact(n, na);
      CAPTURE(n);
      CAPTURE(na);
      CHECK(g < na * kLn2);
      CHECK(g >= prev_g);
      prev_g = g;
      const double p = page_average_exact(n, na);
      CHECK(p <= na * kLn2 * (1.0 + 1e-14));
      CHECK(p >= prev_p);
      prev_p = p;
    }
  }
}

TEST_CASE("variance limit") {
  CHECK(std::abs(gaussian_std_limit(0.5) - 0.16860133368401136491) <= 1e-12);
  CHECK(gaussian_variance_limit(0.5) == doctest::Approx((0.75 - kLn2) / 2).epsilon(1e-14));
  // Small f: the standard deviation behaves like f / 2.
  for (double f : {1e-3, 1e-4}) CHECK(gaussian_std_limit(f) / f == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(gaussian_std_limit(0.0), InvalidArgument);
  CHECK_THROWS_AS(gaussian_std_limit(0.51), InvalidArgument);
}

TEST_CASE("limit summands") {
  CHECK(sbar_lk(0, 0, 0.5) == doctest::Approx(1.0 / 36.0).epsilon(1e-14));
  for (double f : {0.1, 0.25, 0.4}) {
    const double s00 = (3.0 - 4.0 * f) * f / (6.0 * (1.0 - f));
    CHECK(sbar_lk(0, 0, f) == doctest::Approx(s00 * s00).epsilon(1e-13));
  }
  // The ratio approaches its limit with an O(1/k) correction.
  double previous_dev = INFINITY;
  for (int k : {10, 40, 160}) {
    const double ratio = sbar_lk(1, k + 1, 0.3) / sbar_lk(1, k, 0.3);
    const double dev = std::abs(ratio / std::pow(1.0 / 0.3 - 1.0, -2.0) - 1.0);
    CHECK(dev < previous_dev);
    previous_dev = dev;
  }
  CHECK(sbar_lk(1, 2001, 0.49) / sbar_lk(1, 2000, 0.49) ==
        doctest::Approx(std::pow(1.0 / 0.49 - 1.0, -2.0)).epsilon(1e-2));

  double sum = 0.0;
  for (int l = 0; l <= 60; ++l)
    for (int k = 0; l + k <= 60; ++k) sum += sbar_lk(l, k, 0.3);
  CHECK(std::abs(sum - gaussian_variance_limit(0.3)) <= 1e-8);
  CHECK_THROWS_AS(sbar_lk(-1, 0, 0.3), InvalidArgument);
  CHECK_THROWS_AS(sbar_lk(0, 0, 1.0), InvalidArgument);
}

TEST_CASE("closed-form matrix elements") {
  CHECK(s2_closed_form(0, 1, 0) == doctest::Approx(5.0 / 144.0).epsilon(1e-13));
  CHECK(s2_closed_form(0, 2, 0) == doctest::Approx(0.000277777777777777778).epsilon(1e-12));
  CHECK(s2_closed_form(1, 3, 2) == doctest::Approx(9.77975016436554898e-5).epsilon(1e-12));
  CHECK(s2_closed_form(2, 3, 1) == doctest::Approx(0.0258288719827181366).epsilon(1e-12));
  CHECK(s2_closed_form(0, 1, 3) == doctest::Approx(0.00543209876543209877).epsilon(1e-12));

  for (int i = 0; i <= 3; ++i) {
    double previous = INFINITY;
    for (int j = i + 2; j < 600; ++j) {
      const double v = s2_closed_form(i, j, 0);
      CHECK(v >= 0.0);
      CHECK(v < previous);
      previous = v;
    }
  }
  CHECK(std::isfinite(s2_closed_form(500, 2000, 800)));

  // Large N at f = 1/4: N = 400, N_A = 100.
  const double finite = s2_closed_form(99, 100, 200);
  const double limit = sbar_lk(0, 0, 0.25);
  CHECK(std::abs(finite - limit) <= 0.02 * limit);

  CHECK_THROWS_AS(s2_closed_form(2, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(s2_closed_form(3, 1, 0), InvalidArgument);
}

TEST_CASE("leading entropy density") {
  CHECK(lrv_density(0.0) == 0.0);
  CHECK(std::abs(gaussian_thermo(100, 0.3) / 100 - lrv_density(0.3)) < 0.7 / 100);
  CHECK_THROWS_AS(lrv_density(-0.1), InvalidArgument);
  CHECK_THROWS_AS(lrv_density(0.6), InvalidArgument);
}
