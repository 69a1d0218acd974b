#include "zesolve/ode.hpp"

#include <algorithm>
#include <cmath>

namespace zesolve {

namespace {

struct State {
  double y;
  double v;
};

inline State axpy(const State& s, double h, double k1y, double k1v) {
  return {s.y + h * k1y, s.v + h * k1v};
}

}  // namespace

OdeSolution::OdeSolution(CoefficientFn w, std::vector<double> r,
                         std::vector<double> y, std::vector<double> dy)
    : w_(std::move(w)), r_(std::move(r)), y_(std::move(y)), dy_(std::move(dy)) {}

GridSample OdeSolution::grid() const {
  GridSample g;
  g.r = Eigen::Map<const Array>(r_.data(), static_cast<Eigen::Index>(r_.size()));
  g.y = Eigen::Map<const Array>(y_.data(), static_cast<Eigen::Index>(y_.size()));
  g.dy = Eigen::Map<const Array>(dy_.data(),
                                 static_cast<Eigen::Index>(dy_.size()));
  return g;
}

std::pair<double, double> OdeSolution::eval(double r) const {
  const double lo = r_.front();
  const double hi = r_.back();
  const double slack = 1e-9 * (1.0 + std::abs(hi));
  if (r < lo - slack || r > hi + slack)
    throw DomainError("OdeSolution: evaluation outside integrated range");
  r = std::clamp(r, lo, hi);
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t i = (it == r_.begin()) ? 0 : (it - r_.begin() - 1);
  if (i >= r_.size() - 1) i = r_.size() - 2;

  const double h = r_[i + 1] - r_[i];
  const double t = (r - r_[i]) / h;
  const double p0 = y_[i], p1 = y_[i + 1];
  const double d0 = dy_[i], d1 = dy_[i + 1];
  const double a0 = w_(r_[i]) * p0;       // exact y'' at the nodes
  const double a1 = w_(r_[i + 1]) * p1;

  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
  const double H0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double H1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double H2 = 0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5;
  const double H3 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  const double H4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double H5 = 0.5 * t3 - t4 + 0.5 * t5;

  const double value = p0 * H0 + h * d0 * H1 + h * h * a0 * H2 + p1 * H3 +
                       h * d1 * H4 + h * h * a1 * H5;

  const double G0 = -30.0 * t2 + 60.0 * t3 - 30.0 * t4;
  const double G1 = 1.0 - 18.0 * t2 + 32.0 * t3 - 15.0 * t4;
  const double G2 = t - 4.5 * t2 + 6.0 * t3 - 2.5 * t4;
  const double G3 = 30.0 * t2 - 60.0 * t3 + 30.0 * t4;
  const double G4 = -12.0 * t2 + 28.0 * t3 - 15.0 * t4;
  const double G5 = 1.5 * t2 - 4.0 * t3 + 2.5 * t4;

  const double deriv = (p0 * G0 + h * d0 * G1 + h * h * a0 * G2 + p1 * G3 +
                        h * d1 * G4 + h * h * a1 * G5) /
                       h;
  return {value, deriv};
}

OdeSolution integrate_linear_ode2(const CoefficientFn& w, double r0, double y0,
                                  double dy0, double r_end,
                                  const Tolerance& tol) {
  tol.validate();
  if (!(r_end > r0))
    throw ParamDomain("integrate_linear_ode2: r_end must exceed r0");

  // Dormand-Prince 5(4) coefficients.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                   a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                   a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                   b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                   e3 = 500.0 / 1113 - 7571.0 / 16695,
                   e4 = 125.0 / 192 - 393.0 / 640,
                   e5 = -2187.0 / 6784 + 92097.0 / 339200,
                   e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  auto rhs = [&w](double r, const State& s) -> State {
    return {s.v, w(r) * s.y};
  };

  std::vector<double> rs{r0}, ys{y0}, dys{dy0};
  State s{y0, dy0};
  double r = r0;
  double h = std::min(1e-3 * (1.0 + std::abs(r0)), (r_end - r0) / 4.0);
  State k1 = rhs(r, s);
  int steps = 0;

  while (r < r_end) {
    if (++steps > tol.max_steps)
      throw NonConvergent("integrate_linear_ode2: step budget exhausted");
    h = std::min(h, r_end - r);
    if (h < 1e-14 * (1.0 + std::abs(r)))
      throw StepUnderflow("integrate_linear_ode2: step underflow at r=" +
                          std::to_string(r));

    const State s2 = {s.y + h * a21 * k1.y, s.v + h * a21 * k1.v};
    const State k2 = rhs(r + c2 * h, s2);
    const State s3 = {s.y + h * (a31 * k1.y + a32 * k2.y),
                      s.v + h * (a31 * k1.v + a32 * k2.v)};
    const State k3 = rhs(r + c3 * h, s3);
    const State s4 = {s.y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y),
                      s.v + h * (a41 * k1.v + a42 * k2.v + a43 * k3.v)};
    const State k4 = rhs(r + c4 * h, s4);
    const State s5 = {
        s.y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y),
        s.v + h * (a51 * k1.v + a52 * k2.v + a53 * k3.v + a54 * k4.v)};
    const State k5 = rhs(r + c5 * h, s5);
    const State s6 = {s.y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y +
                                 a64 * k4.y + a65 * k5.y),
                      s.v + h * (a61 * k1.v + a62 * k2.v + a63 * k3.v +
                                 a64 * k4.v + a65 * k5.v)};
    const State k6 = rhs(r + h, s6);
    const State snew = {
        s.y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y),
        s.v + h * (b1 * k1.v + b3 * k3.v + b4 * k4.v + b5 * k5.v + b6 * k6.v)};
    const State k7 = rhs(r + h, snew);

    const double erry = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y +
                             e6 * k6.y + e7 * k7.y);
    const double errv = h * (e1 * k1.v + e3 * k3.v + e4 * k4.v + e5 * k5.v +
                             e6 * k6.v + e7 * k7.v);
    const double scy =
        tol.abs + tol.rel * std::max(std::abs(s.y), std::abs(snew.y));
    const double scv =
        tol.abs + tol.rel * std::max(std::abs(s.v), std::abs(snew.v));
    const double errn = std::sqrt(0.5 * ((erry / scy) * (erry / scy) +
                                         (errv / scv) * (errv / scv)));

    if (errn <= 1.0) {
      r += h;
      s = snew;
      k1 = k7;  // FSAL
      rs.push_back(r);
      ys.push_back(s.y);
      dys.push_back(s.v);
      if (std::abs(s.y) > kMagnitudeCap || std::abs(s.v) > kMagnitudeCap)
        throw Overflow("integrate_linear_ode2: solution exceeded magnitude "
                       "cap at r=" +
                       std::to_string(r));
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(errn, 1e-10), -0.2), 0.2, 5.0);
    h *= fac;
  }

  return OdeSolution(w, std::move(rs), std::move(ys), std::move(dys));
}

}  // namespace zesolve
