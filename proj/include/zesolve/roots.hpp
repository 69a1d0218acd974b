#pragma once

#include <functional>
#include <optional>

#include "zesolve/common.hpp"

namespace zesolve {

/// Finds r in [r_lo, r_hi] with m(r) = x_target for strictly increasing m.
/// Bracketing bisection guaranteed to converge; when dm (= dm/dr) is
/// supplied, Newton steps accelerate the refinement but are clipped to the
/// current bracket. Stops at |m(r) - x_target| <= tol.abs + tol.rel*|x_target|
/// or when the bracket shrinks to rounding width.
double invert_monotone(const std::function<double(double)>& m, double x_target,
                       double r_lo, double r_hi, const Tolerance& tol,
                       const std::function<double(double)>& dm = nullptr);

}  // namespace zesolve
