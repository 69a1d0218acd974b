#pragma once

#include "zesolve/common.hpp"

namespace zesolve {

/// Modified Bessel function I_nu(x), nu >= 0, x >= 0 (x = 0 only for the
/// limiting values I_0(0) = 1, I_nu(0) = 0 for nu >= 1). Power series with
/// ratio-accumulated terms; relative accuracy ~1e-14 well past x = 30.
/// Throws Overflow once e^x leaves double range.
double bessel_i(double nu, double x);

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// Evaluated from the integral representation
///   K_nu(x) = \int_0^inf e^{-x cosh t} cosh(nu t) dt
/// by trapezoidal sums with step halving; the integrand is even and analytic
/// so the rule converges geometrically. Throws DomainError at x <= 0.
double bessel_k(double nu, double x);

/// d/dx I_nu(x) = I_{nu+1}(x) + (nu/x) I_nu(x).
double bessel_i_prime(double nu, double x);

/// d/dx K_nu(x) = -K_{nu+1}(x) + (nu/x) K_nu(x).
double bessel_k_prime(double nu, double x);

}  // namespace zesolve
