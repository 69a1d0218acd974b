#pragma once

#include <functional>
#include <vector>

#include "zesolve/common.hpp"

namespace zesolve {

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7-15) integration of f over the finite interval
/// [a, b]. The error budget is tol.rel * |I| + tol.abs, distributed over
/// subintervals by bisection. Throws NonConvergent when the subdivision
/// budget (tol.max_steps interval evaluations) is exhausted.
double integrate_adaptive(const ScalarFn& f, double a, double b,
                          const Tolerance& tol);

/// Improper integral of a continuous positive f over [a, inf).
///
/// The semi-infinite part is handled according to the tail model:
///  - LinearAsymptote: intended for f = 1/phi^2 with phi ~ A r + B. The
///    cutoff R is grown until f matches 1/(A r + B)^2 to 1e-9 relative, and
///    the remainder beyond R is the closed form 1/(A (A R + B)).
///  - PowerDecay: the tail [R, inf) is mapped to (0, 1/R] by t -> 1/t and
///    integrated adaptively.
///  - None: the integrand is probed over growing ranges; BadTail if it does
///    not decay integrably within the probed range.
double integrate_improper(const ScalarFn& f, double a, const TailModel& tail,
                          const Tolerance& tol);

/// Single (non-adaptive) 15-point Kronrod panel over [a, b]. Accurate to
/// machine precision for integrands smooth on the panel; used for cumulative
/// integrals built from pre-validated panels.
double kronrod_panel(const ScalarFn& f, double a, double b);

/// Cumulative integral I(r) = int_{r0}^r f(t) dt for repeated evaluation.
/// Partial sums are cached at panel nodes (linear near r0, geometric
/// beyond), extended lazily; an evaluation adds an adaptive integral over
/// the partial panel. Evaluations at the same r are bit-reproducible.
class CumulativeIntegral {
 public:
  CumulativeIntegral(ScalarFn f, double r0, Tolerance tol);

  double operator()(double r) const;

 private:
  void extend_to(double r) const;

  ScalarFn f_;
  double r0_;
  Tolerance tol_;
  mutable std::vector<double> nodes_;
  mutable std::vector<double> sums_;
};

}  // namespace zesolve
