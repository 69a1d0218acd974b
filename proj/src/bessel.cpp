#include "zesolve/bessel.hpp"

#include <cmath>
#include <limits>

namespace zesolve {

double bessel_i(double nu, double x) {
  if (nu < 0.0) throw ParamDomain("bessel_i: nu must be >= 0");
  if (x < 0.0) throw DomainError("bessel_i: x must be >= 0");
  if (x > 700.0) throw Overflow("bessel_i: exponential growth cap at x=700");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

  // term_0 = (x/2)^nu / Gamma(nu+1); subsequent terms by ratio.
  const double q = 0.25 * x * x;
  double term = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int m = 0; m < 1000; ++m) {
    term *= q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

namespace {

// Trapezoidal sum of exp(-2 x sinh^2(t/2)) cosh(nu t) over t >= 0 with step
// h. The scaled integrand equals e^{x} e^{-x cosh t}.
double k_trapezoid(double nu, double x, double h) {
  double sum = 0.5;  // g(0) = 1
  for (int k = 1; k < 100000; ++k) {
    const double t = k * h;
    const double sh = std::sinh(0.5 * t);
    const double expo = -2.0 * x * sh * sh;
    const double g = (expo < -745.0) ? 0.0 : std::exp(expo) * std::cosh(nu * t);
    sum += g;
    if (t > 1.0 && g < 1e-18 * sum && expo < -40.0) break;
  }
  return h * sum;
}

}  // namespace

double bessel_k(double nu, double x) {
  if (nu < 0.0) throw ParamDomain("bessel_k: nu must be >= 0");
  if (x <= 0.0) throw DomainError("bessel_k: x must be > 0");

  double h = 0.5;
  double prev = k_trapezoid(nu, x, h);
  for (int i = 0; i < 6; ++i) {
    h *= 0.5;
    const double cur = k_trapezoid(nu, x, h);
    if (std::abs(cur - prev) <= 1e-15 * std::abs(cur)) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  return std::exp(-x) * prev;
}

double bessel_i_prime(double nu, double x) {
  if (x == 0.0) {
    if (nu == 0.0) return 0.0;
    if (nu == 1.0) return 0.5;
    return nu < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return bessel_i(nu + 1.0, x) + (nu / x) * bessel_i(nu, x);
}

double bessel_k_prime(double nu, double x) {
  return -bessel_k(nu + 1.0, x) + (nu / x) * bessel_k(nu, x);
}

}  // namespace zesolve
