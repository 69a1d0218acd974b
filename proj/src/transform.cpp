#include "zesolve/transform.hpp"

#include <cmath>

#include "zesolve/ode.hpp"
#include "zesolve/quadrature.hpp"
#include "zesolve/roots.hpp"

namespace zesolve {

MappingFn::MappingFn(ScalarFn1 forward, ScalarFn1 derivative, double r_max,
                     Tolerance tol)
    : forward_(std::move(forward)),
      derivative_(std::move(derivative)),
      r_max_(r_max),
      tol_(tol) {
  tol_.validate();
}

double MappingFn::inverse(double x) const {
  if (x < 0.0) throw NotBracketed("MappingFn::inverse: x must be >= 0");
  if (x == 0.0) return 0.0;
  double r_hi = 1.0;
  int grow = 0;
  while (forward_(r_hi) < x) {
    r_hi *= 2.0;
    if (++grow > 200)
      throw NotBracketed("MappingFn::inverse: bracket growth failed");
  }
  return invert_monotone(forward_, x, 0.0, r_hi, tol_, derivative_);
}

SecondSolution chi_from_phi(const ScalarFn1& phi, const ScalarFn1& dphi,
                            const TailModel& tail, int ell,
                            const Tolerance& tol) {
  tol.validate();
  if (tail.kind == TailModel::Kind::LinearAsymptote && !(tail.A > 0.0))
    throw TailDivergence(
        "chi_from_phi: tail slope A must be > 0 (zero-energy resonance "
        "excluded)");

  // phi must be nodeless for the improper integral to exist.
  const Array probe = log_grid(1e-3, 100.0, 120);
  double prev = 0.0;
  for (double r : probe) {
    const double v = phi(r);
    if (v * prev < 0.0)
      throw NoBoundStateViolation("chi_from_phi: phi changes sign at r≈" +
                                  std::to_string(r));
    if (v != 0.0) prev = v;
  }

  // For ell > 0 the integrand decays like r^{-2 ell - 2}; the linear tail
  // remainder only applies to ell = 0.
  TailModel itail = tail;
  if (ell > 0) itail = TailModel::power_decay();

  auto integrand = [phi](double t) {
    const double v = phi(t);
    return 1.0 / (v * v);
  };
  auto J = [integrand, itail, tol](double r) {
    return integrate_improper(integrand, r, itail, tol);
  };

  SecondSolution s;
  s.chi = [phi, J](double r) { return phi(r) * J(r); };
  s.dchi = [phi, dphi, J](double r) { return dphi(r) * J(r) - 1.0 / phi(r); };
  return s;
}

RegularSolution phi_from_chi(const ScalarFn1& chi, const ScalarFn1& dchi,
                             const Tolerance& tol) {
  tol.validate();
  const Array probe = log_grid(1e-3, 200.0, 150);
  for (double r : probe)
    if (!(chi(r) > 0.0))
      throw DomainError("phi_from_chi: chi must stay positive; zero near r≈" +
                        std::to_string(r));

  auto accum = std::make_shared<CumulativeIntegral>(
      [chi](double t) {
        const double c = chi(t);
        return 1.0 / (c * c);
      },
      0.0, Tolerance{std::min(tol.rel, 1e-12), 1e-15, tol.max_steps});

  RegularSolution s;
  s.phi = [chi, accum](double r) { return chi(r) * (*accum)(r); };
  s.dphi = [chi, dchi, accum](double r) {
    return dchi(r) * (*accum)(r) + 1.0 / chi(r);
  };
  return s;
}

MappingFn build_mapping(const SolutionPair& pair, double r_max,
                        const Tolerance& tol) {
  if (!pair.no_bound_states)
    throw AdmissibilityError("build_mapping: base pair must have no bound "
                             "states");
  auto fwd = [phi = pair.phi, chi = pair.chi](double r) {
    if (r == 0.0) return 0.0;
    return phi(r) / chi(r);
  };
  auto der = [chi = pair.chi](double r) {
    const double c = chi(r);
    return 1.0 / (c * c);
  };
  return MappingFn(fwd, der, r_max, tol);
}

ComposedSystem::ComposedSystem(SolutionPair base, PotentialSpec inner,
                               ScalarFn1 phi1, ScalarFn1 dphi1, double r_max,
                               int depth, std::vector<std::string> provenance,
                               Tolerance tol)
    : base_(std::move(base)),
      inner_(std::move(inner)),
      phi1_(std::move(phi1)),
      dphi1_(std::move(dphi1)),
      r_max_(r_max),
      depth_(depth),
      provenance_(std::move(provenance)) {
  mapping_ = std::make_shared<MappingFn>(build_mapping(base_, r_max_, tol));

  const bool long_range = base_.potential.tail_class == TailClass::LongRange;
  composed_.name = "composed[" + base_.name + " <- " + inner_.name + "]";
  composed_.ell = base_.ell;
  composed_.origin_class = base_.potential.origin_class;
  composed_.tail_class = base_.potential.tail_class;
  composed_.evaluate = [base = base_, inner = inner_, long_range,
                        r_max = r_max_](double r) {
    if (long_range && r > r_max)
      throw DomainError(
          "composed potential: long-range base is domain-limited to r <= " +
          std::to_string(r_max));
    const double c = base.chi(r);
    const double x = (r == 0.0) ? 0.0 : base.phi(r) / c;
    const double c2 = c * c;
    return base.potential.evaluate(r) + inner.evaluate(x) / (c2 * c2);
  };
}

double ComposedSystem::solution(double r) const {
  const double c = base_.chi(r);
  const double x = (r == 0.0) ? 0.0 : base_.phi(r) / c;
  return c * phi1_(x);
}

double ComposedSystem::solution_derivative(double r) const {
  const double c = base_.chi(r);
  const double x = (r == 0.0) ? 0.0 : base_.phi(r) / c;
  return base_.dchi(r) * phi1_(x) + dphi1_(x) / c;
}

namespace {

void check_compose_inputs(const SolutionPair& base,
                          const PotentialSpec& inner) {
  if (!base.no_bound_states)
    throw AdmissibilityError("compose: base pair must have no bound states");
  if (inner.ell != 0)
    throw AdmissibilityError("compose: inner potential must be ell = 0");
  if (inner.tail_class != TailClass::ShortRange)
    throw AdmissibilityError("compose: inner potential must be short range");
  if (inner.origin_class != OriginClass::Regular)
    throw AdmissibilityError(
        "compose: inner potential must satisfy r|V1| in L1 at the origin");
}

}  // namespace

ComposedSystem compose(const SolutionPair& base, const PotentialSpec& inner,
                       ScalarFn1 phi1, ScalarFn1 dphi1, double r_max,
                       const Tolerance& tol) {
  check_compose_inputs(base, inner);
  if (r_max <= 0.0)
    r_max = base.potential.tail_class == TailClass::LongRange ? 30.0 : 50.0;

  if (!phi1) {
    // Integrate the inner regular solution once over the needed x range.
    const double x_at_rmax = base.phi(r_max) / base.chi(r_max);
    const double x_max = 1.1 * x_at_rmax + 1.0;
    auto sol = std::make_shared<OdeSolution>(integrate_linear_ode2(
        [inner](double x) { return inner.evaluate(x); }, 0.0, 0.0, 1.0, x_max,
        tol));
    phi1 = [sol](double x) { return sol->value(x); };
    dphi1 = [sol](double x) { return sol->derivative(x); };
  }
  std::vector<std::string> prov{"base:" + base.name, "inner:" + inner.name};
  return ComposedSystem(base, inner, std::move(phi1), std::move(dphi1), r_max,
                        1, std::move(prov), tol);
}

ComposedSystem iterate(const SolutionPair& base, const PotentialSpec& inner,
                       int depth, ScalarFn1 phi1, ScalarFn1 dphi1,
                       double r_max, const Tolerance& tol, int max_depth) {
  if (depth < 1) throw ParamDomain("iterate: depth must be >= 1");
  if (depth > max_depth)
    throw DepthLimit("iterate: depth " + std::to_string(depth) +
                     " exceeds the configured maximum " +
                     std::to_string(max_depth));
  if (depth > 1 && base.ell != 0)
    throw AdmissibilityError(
        "iterate: repeated composition needs an ell = 0 base (the composed "
        "potential must remain an admissible inner)");

  ComposedSystem current = compose(base, inner, phi1, dphi1, r_max, tol);
  for (int d = 2; d <= depth; ++d) {
    PotentialSpec next_inner = current.potential();
    next_inner.ell = 0;
    auto prev = std::make_shared<ComposedSystem>(std::move(current));
    ScalarFn1 f = [prev](double x) { return prev->solution(x); };
    ScalarFn1 df = [prev](double x) { return prev->solution_derivative(x); };
    std::vector<std::string> prov = prev->provenance();
    prov.push_back("iterate:depth=" + std::to_string(d));
    current = ComposedSystem(base, std::move(next_inner), std::move(f),
                             std::move(df), prev->r_max(), d, std::move(prov),
                             tol);
  }
  return current;
}

}  // namespace zesolve
