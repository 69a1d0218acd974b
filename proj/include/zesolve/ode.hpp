#pragma once

#include <functional>
#include <vector>

#include "zesolve/common.hpp"

namespace zesolve {

/// Right-hand side of the second-order linear problem y'' = w(r) y.
using CoefficientFn = std::function<double(double)>;

/// Dense trajectory of y'' = w(r) y. Stores (r, y, y') at every accepted
/// step; between nodes evaluation uses two-point quintic Hermite built from
/// values, first derivatives, and the exact second derivatives w(r) y.
class OdeSolution {
 public:
  OdeSolution(CoefficientFn w, std::vector<double> r, std::vector<double> y,
              std::vector<double> dy);

  double operator()(double r) const { return eval(r).first; }
  double value(double r) const { return eval(r).first; }
  double derivative(double r) const { return eval(r).second; }

  double r_begin() const { return r_.front(); }
  double r_end() const { return r_.back(); }

  GridSample grid() const;

 private:
  std::pair<double, double> eval(double r) const;

  CoefficientFn w_;
  std::vector<double> r_, y_, dy_;
};

/// Adaptive Dormand-Prince 5(4) integration of y'' = w(r) y from
/// (r0, y0, dy0) to r_end. Throws StepUnderflow when the step size collapses
/// (non-integrable singularity) and Overflow when |y| passes kMagnitudeCap.
OdeSolution integrate_linear_ode2(const CoefficientFn& w, double r0, double y0,
                                  double dy0, double r_end,
                                  const Tolerance& tol);

}  // namespace zesolve
