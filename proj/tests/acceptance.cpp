// Acceptance gate: ten end-to-end checks at pinned tolerances, one line each.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "zesolve/analysis.hpp"
#include "zesolve/bessel.hpp"
#include "zesolve/catalog.hpp"
#include "zesolve/ode.hpp"
#include "zesolve/transform.hpp"

using namespace zesolve;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail) {
  std::printf("[%2d] %-34s %s  (%s)\n", idx, name.c_str(),
              ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// 1. Identity transform: composing over the free base reproduces the inner
//    potential and its solution exactly.
void criterion_identity() {
  const auto base = make_pair({"free", {}});
  const auto ip =
      make_pair({"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}});
  auto sys = compose(base, ip.potential, ip.phi, ip.dphi);
  double dev_v = 0.0, dev_phi = 0.0;
  for (double r : log_grid(1e-3, 20.0, 400)) {
    dev_v = std::max(dev_v, std::abs(sys.potential().evaluate(r) -
                                     ip.potential.evaluate(r)));
    dev_phi = std::max(dev_phi, std::abs(sys.solution(r) - ip.phi(r)));
  }
  report(1, "identity transform", dev_v < 1e-12 && dev_phi < 1e-12,
         "dV=" + fmt(dev_v) + " dphi=" + fmt(dev_phi));
}

// 2. Quadrature-built second solution matches the printed closed form.
void criterion_chi_oracle() {
  auto phi = [](double r) { return r * std::exp(-1.0 / r); };
  auto dphi = [](double r) { return std::exp(-1.0 / r) * (1.0 + 1.0 / r); };
  auto s = chi_from_phi(phi, dphi, TailModel::linear(1.0, -1.0));
  double worst = 0.0;
  for (double r : log_grid(0.05, 50.0, 120)) {
    const double want = r * std::sinh(1.0 / r);
    worst = std::max(worst, std::abs(s.chi(r) - want) / want);
  }
  report(2, "second-solution quadrature oracle", worst < 1e-8,
         "max rel dev=" + fmt(worst));
}

// 3. Wronskian of every catalog pair on its working grid.
void criterion_wronskian() {
  const std::vector<FamilyId> fams = {
      {"free", {}},
      {"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}},
      {"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}},
      {"exponential-70", {{"lambda", 1.0}, {"mu", 1.0}}},
      {"inverse-power-72", {{"g", 1.0}, {"n", 5.0}}},
      {"inverse-quartic-74", {{"g", 1.0}}},
      {"coulomb-72p", {{"alpha", 1.0}}},
      {"chi-rational-79", {{"alpha", 1.0}, {"beta", 1.0}, {"n", 2.0}}},
      {"chi-exponential-82", {{"mu", 1.0}}}};
  double worst = 0.0;
  std::string worst_fam;
  for (const auto& f : fams) {
    const auto p = make_pair(f);
    const double hi =
        p.potential.tail_class == TailClass::LongRange ? 30.0 : 50.0;
    for (double r : log_grid(pair_grid_min(p), hi, 200)) {
      const double dev =
          std::abs(p.dphi(r) * p.chi(r) - p.phi(r) * p.dchi(r) - 1.0);
      if (dev > worst) {
        worst = dev;
        worst_fam = f.id;
      }
    }
  }
  report(3, "catalog Wronskians", worst < 1e-8,
         "max dev=" + fmt(worst) + " at " + worst_fam);
}

// 4. End-to-end composition with centrifugal-free base pair and closed-form
//    inner solution, cross-checked against an independent ODE integration.
void criterion_theorem2() {
  const auto base =
      make_pair({"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}});
  const auto ip = make_pair({"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}});
  auto sys = compose(base, ip.potential, ip.phi, ip.dphi);

  const Array grid = log_grid(1e-2, 30.0, 300);
  const double res =
      residual(sys.potential(), [&sys](double r) { return sys.solution(r); },
               grid);

  Tolerance tol{1e-12, 1e-14, 400000};
  auto ode = integrate_linear_ode2(
      [&sys](double r) { return sys.potential().effective(r); }, 0.0, 0.0,
      1.0, 30.0, tol);
  const double scale = sys.solution(1.0) / ode.value(1.0);
  double max_dev = 0.0, max_mag = 0.0;
  for (double r : log_grid(0.1, 30.0, 200)) {
    max_dev = std::max(max_dev,
                       std::abs(scale * ode.value(r) - sys.solution(r)));
    max_mag = std::max(max_mag, std::abs(sys.solution(r)));
  }
  const double linf = max_dev / max_mag;
  report(4, "composition end-to-end", res < 1e-6 && linf < 1e-6,
         "residual=" + fmt(res) + " ode Linf=" + fmt(linf));
}

// 5. Node and bound-state count preservation plus Bargmann bounds.
void criterion_nodes() {
  PotentialSpec attractive{"attractive-exp",
                           [](double r) { return -5.0 * std::exp(-r); },
                           0,
                           OriginClass::Regular,
                           TailClass::ShortRange,
                           {}};
  Tolerance tol{1e-11, 1e-13, 400000};
  auto phi1 = std::make_shared<OdeSolution>(
      integrate_linear_ode2([](double r) { return -5.0 * std::exp(-r); }, 0.0,
                            0.0, 1.0, 100.0, tol));
  const int inner_nodes =
      count_nodes([phi1](double r) { return phi1->value(r); }, 1e-3, 50.0);

  const auto base = make_pair({"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}});
  auto sys = compose(base, attractive,
                     [phi1](double x) { return phi1->value(x); },
                     [phi1](double x) { return phi1->derivative(x); });
  const int composed_nodes =
      count_nodes([&sys](double r) { return sys.solution(r); }, 1e-3, 50.0);

  const double bb = bargmann_bound(attractive, tol);
  const auto v23 =
      make_potential({"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}});
  const double bb23 = bargmann_bound(v23, tol);

  const bool ok = inner_nodes == 1 && composed_nodes == 1 &&
                  std::abs(bb - 5.0) < 1e-6 && inner_nodes <= bb &&
                  std::abs(bb23 - 2.0) < 1e-6;
  report(5, "node preservation + Bargmann", ok,
         "nodes=" + std::to_string(inner_nodes) + "/" +
             std::to_string(composed_nodes) + " bounds=" + fmt(bb) + "," +
             fmt(bb23));
}

// 6. Tail asymptotics: fitted slopes match the printed limits and chi(inf)
//    is the reciprocal slope.
void criterion_asymptotics() {
  const auto e70 = make_pair({"exponential-70", {{"lambda", 1.0}, {"mu", 1.0}}});
  const double a_e70 = asymptotic_fit(e70.phi, 0, 35.0, 50.0).tail.A;
  const double i02 = bessel_i(0.0, 2.0);

  const auto p22 = make_pair({"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}});
  const auto f22 = asymptotic_fit(p22.phi, 0, 140.0, 200.0);

  const double chi_inf = e70.chi(500.0);
  const bool ok = std::abs(a_e70 - i02) < 1e-6 &&
                  std::abs(f22.tail.A - std::sinh(1.0)) < 1e-6 &&
                  f22.tail.B < 0.0 && std::abs(chi_inf * a_e70 - 1.0) < 1e-6;
  report(6, "tail asymptotics", ok,
         "A-I0(2)=" + fmt(a_e70 - i02) + " A-sinh1=" +
             fmt(f22.tail.A - std::sinh(1.0)) + " chiA-1=" +
             fmt(chi_inf * a_e70 - 1.0));
}

// 7. Iteration: depth-2 residual and the free fixed point at depths 1-3.
void criterion_iteration() {
  const auto base = make_pair({"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}});
  const auto ip =
      make_pair({"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}});
  auto sys = iterate(base, ip.potential, 2, ip.phi, ip.dphi);
  const Array grid = log_grid(1e-2, 20.0, 200);
  const double res =
      residual(sys.potential(), [&sys](double r) { return sys.solution(r); },
               grid);

  const auto free_base = make_pair({"free", {}});
  double fixed_dev = 0.0;
  for (int depth : {1, 2, 3}) {
    auto fp = iterate(free_base, ip.potential, depth, ip.phi, ip.dphi);
    for (double r : {0.05, 0.9, 5.0, 18.0})
      fixed_dev = std::max(fixed_dev, std::abs(fp.potential().evaluate(r) -
                                               ip.potential.evaluate(r)));
  }
  report(7, "iteration depth 2 + fixed point", res < 1e-5 && fixed_dev < 1e-10,
         "residual=" + fmt(res) + " fixed dev=" + fmt(fixed_dev));
}

// 8. chi-first generator reproduces the printed potential and recovers the
//    regular solution with slope 1/chi(inf).
void criterion_chi_first() {
  auto chi = [](double r) { return 0.5 * (1.0 + std::exp(-r)); };
  auto dchi = [](double r) { return -0.5 * std::exp(-r); };
  auto d2chi = [](double r) { return 0.5 * std::exp(-r); };
  auto [pot, pair] = make_chi_first(chi, dchi, d2chi);

  double dev_v = 0.0;
  for (double r : linear_grid(0.0, 40.0, 400)) {
    const double want = std::exp(-r) / (1.0 + std::exp(-r));
    dev_v = std::max(dev_v, std::abs(pot.evaluate(r) - want));
  }
  const Array grid = log_grid(1e-2, 40.0, 200);
  const double res = residual(pot, pair.phi, grid);
  const double a_fit = asymptotic_fit(pair.phi, 0, 28.0, 40.0).tail.A;
  const bool ok = dev_v < 1e-10 && res < 1e-7 && std::abs(a_fit - 2.0) < 1e-6;
  report(8, "chi-first generator", ok,
         "dV=" + fmt(dev_v) + " residual=" + fmt(res) + " A-2=" +
             fmt(a_fit - 2.0));
}

// 9. Solving the transformed equation in the mapped variable reproduces the
//    inner solution.
void criterion_transformed_equation() {
  const auto base = make_pair({"rational-exp-22", {{"lambda", 1.0}, {"a", 1.0}}});
  const auto ip =
      make_pair({"inverse-square-quartic-23", {{"g", 4.0}, {"b", 1.0}}});
  auto sys = compose(base, ip.potential, ip.phi, ip.dphi);

  const double x_max = sys.mapping().forward(20.0);
  Tolerance tol{1e-12, 1e-14, 400000};
  auto psi = integrate_linear_ode2(
      [&ip](double x) { return ip.potential.evaluate(x); }, 0.0, 0.0, 1.0,
      x_max, tol);
  double worst = 0.0;
  for (double x : log_grid(1e-2, x_max, 100))
    worst = std::max(worst,
                     std::abs(psi.value(x) - ip.phi(x)) / std::abs(ip.phi(x)));
  report(9, "transformed-equation check", worst < 1e-6,
         "max rel dev=" + fmt(worst));
}

// 10. Negative controls: a 1% shape corruption trips the residual gate and a
//     nodeful pair fails certification.
void criterion_negative_controls() {
  const auto q = make_pair({"inverse-quartic-74", {{"g", 1.0}}});
  auto corrupted = [&q](double r) {
    return q.phi(r) * (1.0 + 0.01 * r / (1.0 + r));
  };
  const Array grid = log_grid(0.1, 20.0, 200);
  const double res = residual(q.potential, corrupted, grid);

  Tolerance tol{1e-11, 1e-13, 400000};
  auto sol = std::make_shared<OdeSolution>(
      integrate_linear_ode2([](double r) { return -5.0 * std::exp(-r); }, 0.0,
                            0.0, 1.0, 60.0, tol));
  SolutionPair nodeful;
  nodeful.name = "attractive-exp-numeric";
  nodeful.potential = {"attractive-exp",
                       [](double r) { return -5.0 * std::exp(-r); },
                       0,
                       OriginClass::Regular,
                       TailClass::ShortRange,
                       {}};
  nodeful.phi = [sol](double r) { return sol->value(r); };
  nodeful.dphi = [sol](double r) { return sol->derivative(r); };
  nodeful.chi = [](double) { return 1.0; };
  nodeful.dchi = [](double) { return 0.0; };
  nodeful.tail = TailModel::none();
  const auto cert = certify_no_bound_states(nodeful);

  report(10, "negative controls", res > 1e-6 && !cert.certified,
         "corrupted residual=" + fmt(res) + " certified=" +
             (cert.certified ? "yes" : "no"));
}

}  // namespace

int main() {
  criterion_identity();
  criterion_chi_oracle();
  criterion_wronskian();
  criterion_theorem2();
  criterion_nodes();
  criterion_asymptotics();
  criterion_iteration();
  criterion_chi_first();
  criterion_transformed_equation();
  criterion_negative_controls();
  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
