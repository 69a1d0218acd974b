#include "zesolve/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace zesolve {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                           0.3818300505051189, 0.4179591836734694};

struct PanelResult {
  double kronrod;
  double err;  // |kronrod - gauss|
};

PanelResult gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

struct AdaptiveState {
  const ScalarFn& f;
  const Tolerance& tol;
  int panels_used = 0;
};

double adapt(AdaptiveState& st, double a, double b, const PanelResult& whole,
             double budget, int depth) {
  // Accept against the shared budget or, like QUADPACK, against the panel's
  // own relative scale: for one-signed integrands the per-panel relative
  // errors sum to at most tol.rel times the total.
  if (whole.err <= std::max(budget, st.tol.rel * std::abs(whole.kronrod)) ||
      depth > 60)
    return whole.kronrod;
  if (++st.panels_used > st.tol.max_steps)
    throw NonConvergent("integrate_adaptive: subdivision budget exhausted");
  const double c = 0.5 * (a + b);
  const PanelResult left = gk15(st.f, a, c);
  const PanelResult right = gk15(st.f, c, b);
  return adapt(st, a, c, left, 0.5 * budget, depth + 1) +
         adapt(st, c, b, right, 0.5 * budget, depth + 1);
}

}  // namespace

double kronrod_panel(const ScalarFn& f, double a, double b) {
  return gk15(f, a, b).kronrod;
}

double integrate_adaptive(const ScalarFn& f, double a, double b,
                          const Tolerance& tol) {
  tol.validate();
  if (a == b) return 0.0;
  AdaptiveState st{f, tol};
  const PanelResult whole = gk15(f, a, b);
  const double budget =
      tol.rel * std::abs(whole.kronrod) + std::max(tol.abs, 1e-300);
  return adapt(st, a, b, whole, budget, 0);
}

namespace {

// Finite part plus analytic remainder for f ~ 1/(A r + B)^2. The cutoff is
// grown until the integrand matches the asymptote to 1e-9 relative.
double improper_linear(const ScalarFn& f, double a, const TailModel& tail,
                       const Tolerance& tol) {
  const double A = tail.A;
  const double B = tail.B;
  double R = std::max({a + 1.0, 2.0 * std::abs(B / A) + 1.0, 10.0});
  for (;;) {
    const double denom = A * R + B;
    if (denom > 0.0) {
      const double asym = 1.0 / (denom * denom);
      const double fv = f(R);
      if (fv > 0.0 && std::abs(fv - asym) <= 1e-9 * fv) break;
    }
    R *= 2.0;
    if (R > 1e12)
      throw BadTail(
          "integrate_improper: integrand never matches the linear-asymptote "
          "tail");
  }
  const double remainder = 1.0 / (A * (A * R + B));
  return integrate_adaptive(f, a, R, tol) + remainder;
}

double improper_power(const ScalarFn& f, double a, const Tolerance& tol) {
  const double R = std::max(a, 1.0);
  double finite = (R > a) ? integrate_adaptive(f, a, R, tol) : 0.0;
  // t -> 1/u maps [R, inf) onto (0, 1/R]; Kronrod nodes are interior so the
  // endpoint u = 0 is never evaluated.
  const auto g = [&f](double u) { return f(1.0 / u) / (u * u); };
  double mapped = integrate_adaptive(g, 0.0, 1.0 / R, tol);
  if (!std::isfinite(mapped))
    throw BadTail("integrate_improper: power-decay tail did not converge");
  return finite + mapped;
}

double improper_probe(const ScalarFn& f, double a, const Tolerance& tol) {
  double total = 0.0;
  double lo = a;
  double span = 10.0;
  for (int i = 0; i < 40; ++i) {
    const double hi = lo + span;
    const double chunk = integrate_adaptive(f, lo, hi, tol);
    total += chunk;
    if (std::abs(chunk) <= tol.rel * std::abs(total) + tol.abs) return total;
    lo = hi;
    span *= 2.0;
  }
  throw BadTail("integrate_improper: no integrable decay detected");
}

}  // namespace

CumulativeIntegral::CumulativeIntegral(ScalarFn f, double r0, Tolerance tol)
    : f_(std::move(f)), r0_(r0), tol_(tol) {
  tol_.validate();
  nodes_.push_back(r0_);
  sums_.push_back(0.0);
}

void CumulativeIntegral::extend_to(double r) const {
  while (nodes_.back() < r) {
    const double last = nodes_.back();
    const double step = (last - r0_ < 1.0) ? 0.25 : 0.25 * (last - r0_);
    const double next = last + step;
    const double panel = integrate_adaptive(f_, last, next, tol_);
    nodes_.push_back(next);
    sums_.push_back(sums_.back() + panel);
  }
}

double CumulativeIntegral::operator()(double r) const {
  if (r < r0_) throw DomainError("CumulativeIntegral: r below lower limit");
  if (r == r0_) return 0.0;
  extend_to(r);
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r);
  const std::size_t i = (it - nodes_.begin()) - 1;
  return sums_[i] + integrate_adaptive(f_, nodes_[i], r, tol_);
}

double integrate_improper(const ScalarFn& f, double a, const TailModel& tail,
                          const Tolerance& tol) {
  tol.validate();
  switch (tail.kind) {
    case TailModel::Kind::LinearAsymptote:
      return improper_linear(f, a, tail, tol);
    case TailModel::Kind::PowerDecay:
      return improper_power(f, a, tol);
    case TailModel::Kind::None:
      return improper_probe(f, a, tol);
  }
  throw ParamDomain("integrate_improper: unknown tail kind");
}

}  // namespace zesolve
