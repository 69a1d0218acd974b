#include "zesolve/roots.hpp"

#include <cmath>

namespace zesolve {

double invert_monotone(const std::function<double(double)>& m, double x_target,
                       double r_lo, double r_hi, const Tolerance& tol,
                       const std::function<double(double)>& dm) {
  tol.validate();
  if (!(r_lo <= r_hi))
    throw ParamDomain("invert_monotone: empty bracket");
  double f_lo = m(r_lo) - x_target;
  double f_hi = m(r_hi) - x_target;
  if (f_lo > 0.0 || f_hi < 0.0)
    throw NotBracketed("invert_monotone: target outside [m(r_lo), m(r_hi)]");
  if (f_lo == 0.0) return r_lo;
  if (f_hi == 0.0) return r_hi;

  const double f_goal = tol.abs + tol.rel * std::abs(x_target);
  double r = 0.5 * (r_lo + r_hi);
  for (int it = 0; it < tol.max_steps; ++it) {
    double f = m(r) - x_target;
    if (std::abs(f) <= f_goal) return r;
    if (f > 0.0) {
      r_hi = r;
    } else {
      r_lo = r;
    }
    if (r_hi - r_lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(r_lo) + std::abs(r_hi)))
      return r;

    double next = 0.5 * (r_lo + r_hi);
    if (dm) {
      const double d = dm(r);
      if (d > 0.0) {
        const double newton = r - f / d;
        if (newton > r_lo && newton < r_hi) next = newton;
      }
    }
    r = next;
  }
  throw NonConvergent("invert_monotone: iteration budget exhausted");
}

}  // namespace zesolve
