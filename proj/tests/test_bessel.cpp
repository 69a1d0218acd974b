#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zesolve/bessel.hpp"
#include "zesolve/common.hpp"

using namespace zesolve;

namespace {

// Independent oracle: direct power-series summation of I0 with explicit
// factorials, 30 terms.
double i0_series_oracle(double x) {
  double sum = 0.0;
  for (int m = 0; m < 30; ++m) {
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    const double t = std::pow(0.5 * x, m) / fact;
    sum += t * t;
  }
  return sum;
}

// Standard large-x asymptotic series for K_nu, 6 terms.
double k_asymptotic_oracle(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    sum += term;
  }
  return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace

TEST_CASE("I at the origin and at x=2") {
  CHECK(bessel_i(0.0, 0.0) == 1.0);
  CHECK(bessel_i(1.0, 0.0) == 0.0);
  CHECK(bessel_i(0.0, 2.0) ==
        doctest::Approx(i0_series_oracle(2.0)).epsilon(1e-14));
  CHECK(bessel_i(0.0, 2.0) == doctest::Approx(2.2795853).epsilon(1e-7));
}

TEST_CASE("half-integer closed form for K") {
  CHECK(bessel_k(0.5, 1.0) ==
        doctest::Approx(std::sqrt(M_PI / 2.0) * std::exp(-1.0)).epsilon(1e-13));
  CHECK(bessel_k(0.5, 7.5) ==
        doctest::Approx(std::sqrt(M_PI / 15.0) * std::exp(-7.5)).epsilon(1e-13));
}

TEST_CASE("K asymptotics at x=20") {
  CHECK(bessel_k(0.0, 20.0) ==
        doctest::Approx(k_asymptotic_oracle(0.0, 20.0)).epsilon(1e-6));
  CHECK(bessel_k(1.0, 20.0) ==
        doctest::Approx(k_asymptotic_oracle(1.0, 20.0)).epsilon(1e-6));
}

TEST_CASE("scaled Wronskian x (I K' - I' K) = -1") {
  for (double nu : {0.0, 1.0, 0.5, 1.0 / 3.0, 2.0 / 3.0}) {
    const Array xs = log_grid(1e-3, 30.0, 60);
    for (double x : xs) {
      const double w = x * (bessel_i(nu, x) * bessel_k_prime(nu, x) -
                            bessel_i_prime(nu, x) * bessel_k(nu, x));
      CHECK(std::abs(w + 1.0) < 1e-10);
    }
  }
}

TEST_CASE("monotonicity and positivity") {
  for (double nu : {0.0, 1.0, 1.0 / 3.0}) {
    double prev_i = bessel_i(nu, 1e-3);
    double prev_k = bessel_k(nu, 1e-3);
    for (double x = 0.1; x <= 30.0; x += 0.7) {
      const double i = bessel_i(nu, x), k = bessel_k(nu, x);
      CHECK(i > prev_i);
      CHECK(k > 0.0);
      CHECK(k < prev_k);
      prev_i = i;
      prev_k = k;
    }
  }
}

TEST_CASE("domain and overflow errors") {
  CHECK_THROWS_AS(bessel_k(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(bessel_i(0.0, 800.0), Overflow);
}
