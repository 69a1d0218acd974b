#include "zesolve/catalog.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "zesolve/bessel.hpp"
#include "zesolve/quadrature.hpp"

namespace zesolve {

namespace {

constexpr double kEulerGamma = 0.5772156649015329;

void require(bool ok, const std::string& constraint) {
  if (!ok) throw ParamDomain("parameter constraint violated: " + constraint);
}

double get_required(const FamilyId& f, const std::string& key) {
  auto it = f.params.find(key);
  if (it == f.params.end())
    throw ParamDomain("family '" + f.id + "' needs parameter '" + key + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Potentials
// ---------------------------------------------------------------------------

PotentialSpec potential_free() {
  return {"free", [](double) { return 0.0; }, 0, OriginClass::Regular,
          TailClass::ShortRange, {}};
}

PotentialSpec potential_rational_exp_22(double lambda, double a) {
  require(a > 0.0, "rational-exp-22: a > 0");
  return {"rational-exp-22",
          [lambda, a](double r) {
            const double q = 1.0 + a * r;
            return lambda * a * a / (q * q * q * q);
          },
          0,
          OriginClass::Regular,
          TailClass::ShortRange,
          {{"lambda", lambda}, {"a", a}}};
}

PotentialSpec potential_inverse_square_quartic_23(double g, double b,
                                                  int ell) {
  require(b > 0.0, "inverse-square-quartic-23: b > 0");
  require(ell >= 0, "inverse-square-quartic-23: ell >= 0");
  return {"inverse-square-quartic-23",
          [g, b](double r) {
            const double q = b * b + r * r;
            return g * b * b / (q * q);
          },
          ell,
          OriginClass::Regular,
          TailClass::ShortRange,
          {{"g", g}, {"b", b}}};
}

PotentialSpec potential_exponential_70(double lambda, double mu) {
  require(mu > 0.0, "exponential-70: mu > 0");
  return {"exponential-70",
          [lambda, mu](double r) { return lambda * std::exp(-mu * r); },
          0,
          OriginClass::Regular,
          TailClass::ShortRange,
          {{"lambda", lambda}, {"mu", mu}}};
}

PotentialSpec potential_inverse_power_72(double g, double n, int ell) {
  require(g > 0.0, "inverse-power-72: g > 0");
  require(n > 2.0, "inverse-power-72: n > 2");
  return {"inverse-power-72",
          [g, n](double r) {
            if (r <= 0.0)
              throw DomainError("inverse-power-72: singular at r = 0");
            return g * std::pow(r, -n);
          },
          ell,
          OriginClass::StronglySingular,
          TailClass::ShortRange,
          {{"g", g}, {"n", n}}};
}

PotentialSpec potential_inverse_quartic_74(double g) {
  require(g > 0.0, "inverse-quartic-74: g > 0");
  return {"inverse-quartic-74",
          [g](double r) {
            if (r <= 0.0)
              throw DomainError("inverse-quartic-74: singular at r = 0");
            const double r2 = r * r;
            return g / (r2 * r2);
          },
          0,
          OriginClass::StronglySingular,
          TailClass::ShortRange,
          {{"g", g}}};
}

PotentialSpec potential_coulomb_72p(double alpha) {
  require(alpha > 0.0, "coulomb-72p: alpha > 0");
  return {"coulomb-72p",
          [alpha](double r) {
            if (r <= 0.0) throw DomainError("coulomb-72p: r must be > 0");
            return alpha / r;
          },
          0,
          OriginClass::Regular,
          TailClass::LongRange,
          {{"alpha", alpha}}};
}

PotentialSpec potential_log_singular_68(double alpha, double g, double R,
                                        int ell) {
  require(alpha > 0.0, "log-singular-68-numeric: alpha > 0");
  require(R > 0.0 && R < 1.0, "log-singular-68-numeric: 0 < R < 1");
  return {"log-singular-68-numeric",
          [alpha, g, R](double r) {
            if (r <= 0.0)
              throw DomainError("log-singular-68-numeric: singular at r = 0");
            if (r >= R) return 0.0;
            const double L = std::log(1.0 / r);
            return alpha / (r * r * L) + g / (r * r * L * L);
          },
          ell,
          OriginClass::StronglySingular,
          TailClass::ShortRange,
          {{"alpha", alpha}, {"g", g}, {"R", R}}};
}

// ---------------------------------------------------------------------------
// Solution pairs. Each returns the closed forms already normalized to
// W(phi, chi) = 1 with chi(inf) = 1/A finite.
// ---------------------------------------------------------------------------

SolutionPair pair_free() {
  SolutionPair p;
  p.name = "free";
  p.potential = potential_free();
  p.phi = [](double r) { return r; };
  p.dphi = [](double) { return 1.0; };
  p.chi = [](double) { return 1.0; };
  p.dchi = [](double) { return 0.0; };
  p.tail = TailModel::linear(1.0, 0.0);
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

SolutionPair pair_rational_exp_22(double lambda, double a) {
  require(lambda > 0.0, "rational-exp-22: lambda > 0");
  require(a > 0.0, "rational-exp-22: a > 0");
  const double sl = std::sqrt(lambda);
  const double cth = 1.0 / std::tanh(sl);
  const auto u = [sl, a](double r) { return sl * a * r / (1.0 + a * r); };

  SolutionPair p;
  p.name = "rational-exp-22";
  p.potential = potential_rational_exp_22(lambda, a);
  p.phi = [sl, a, u](double r) {
    return (1.0 + a * r) / (a * sl) * std::sinh(u(r));
  };
  p.dphi = [sl, a, u](double r) {
    return std::sinh(u(r)) / sl + std::cosh(u(r)) / (1.0 + a * r);
  };
  p.chi = [sl, a, cth, u](double r) {
    const double v = u(r);
    return (1.0 + a * r) * (std::cosh(v) - cth * std::sinh(v));
  };
  p.dchi = [sl, a, cth, u](double r) {
    const double v = u(r);
    return a * (std::cosh(v) - cth * std::sinh(v)) +
           (a * sl / (1.0 + a * r)) * (std::sinh(v) - cth * std::cosh(v));
  };
  p.tail = TailModel::linear(std::sinh(sl) / sl,
                             std::sinh(sl) / (a * sl) - std::cosh(sl) / a);
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

// The printed second solution w cosh(s) has Wronskian b against phi and
// grows linearly; rescale by 1/b and subtract c*phi so chi(inf) = 1/A.
SolutionPair pair_inverse_square_quartic_23(double g, double b) {
  require(g > 1.0, "inverse-square-quartic-23 pair: g > 1 (sinh branch)");
  require(b > 0.0, "inverse-square-quartic-23: b > 0");
  const double q = std::sqrt(g - 1.0);
  const double s_inf = q * M_PI / 2.0;
  const double c = q / (b * std::tanh(s_inf));
  const auto s = [q, b](double r) { return q * std::atan(r / b); };
  const auto w = [b](double r) { return std::sqrt(b * b + r * r); };

  SolutionPair p;
  p.name = "inverse-square-quartic-23";
  p.potential = potential_inverse_square_quartic_23(g, b, 0);
  p.phi = [q, s, w](double r) { return w(r) / q * std::sinh(s(r)); };
  p.dphi = [q, b, s, w](double r) {
    return r / (q * w(r)) * std::sinh(s(r)) + b / w(r) * std::cosh(s(r));
  };
  p.chi = [q, b, c, s, w, phi = p.phi](double r) {
    return w(r) * std::cosh(s(r)) / b - c * phi(r);
  };
  p.dchi = [q, b, c, s, w, dphi = p.dphi](double r) {
    const double raw =
        r / w(r) * std::cosh(s(r)) + q * b / w(r) * std::sinh(s(r));
    return raw / b - c * dphi(r);
  };
  p.tail = TailModel::linear(std::sinh(s_inf) / q, -b * std::cosh(s_inf));
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

SolutionPair pair_exponential_70(double lambda, double mu) {
  require(lambda > 0.0, "exponential-70 pair: lambda > 0");
  require(mu > 0.0, "exponential-70: mu > 0");
  const double z0 = 2.0 * std::sqrt(lambda) / mu;
  const double i0 = bessel_i(0.0, z0);
  const double k0 = bessel_k(0.0, z0);
  const double alpha = -2.0 * k0 / mu;
  const double beta = 2.0 * i0 / mu;
  const auto z = [z0, mu](double r) { return z0 * std::exp(-0.5 * mu * r); };

  SolutionPair p;
  p.name = "exponential-70";
  p.potential = potential_exponential_70(lambda, mu);
  p.phi = [alpha, beta, z](double r) {
    const double zz = z(r);
    return alpha * bessel_i(0.0, zz) + beta * bessel_k(0.0, zz);
  };
  p.dphi = [alpha, beta, mu, z](double r) {
    const double zz = z(r);
    return (alpha * bessel_i(1.0, zz) - beta * bessel_k(1.0, zz)) *
           (-0.5 * mu * zz);
  };
  p.chi = [i0, z](double r) { return bessel_i(0.0, z(r)) / i0; };
  p.dchi = [i0, mu, z](double r) {
    const double zz = z(r);
    return bessel_i(1.0, zz) / i0 * (-0.5 * mu * zz);
  };
  p.tail =
      TailModel::linear(i0, alpha - beta * (std::log(0.5 * z0) + kEulerGamma));
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

SolutionPair pair_inverse_power_72(double g, double n, int ell) {
  require(g > 0.0, "inverse-power-72: g > 0");
  require(n > 2.0 * ell + 3.0, "inverse-power-72: n > 2*ell + 3");
  const double sigma = 0.5 * (n - 2.0);
  const double nu = (2.0 * ell + 1.0) / (n - 2.0);
  const double zc = 2.0 * std::sqrt(g) / (n - 2.0);
  // phi normalized to leading coefficient 1 at infinity: phi ~ r^{ell+1}.
  const double norm = 0.5 * std::tgamma(nu) * std::pow(2.0 / zc, nu);
  const double chi_scale = norm / sigma;
  const auto z = [zc, sigma](double r) { return zc * std::pow(r, -sigma); };

  SolutionPair p;
  p.name = "inverse-power-72";
  p.potential = potential_inverse_power_72(g, n, ell);
  p.phi = [nu, norm, z](double r) {
    return std::sqrt(r) * bessel_k(nu, z(r)) / norm;
  };
  p.dphi = [nu, norm, sigma, z](double r) {
    const double zz = z(r);
    return (0.5 / std::sqrt(r) * bessel_k(nu, zz) +
            std::sqrt(r) * bessel_k_prime(nu, zz) * (-sigma * zz / r)) /
           norm;
  };
  p.chi = [nu, chi_scale, z](double r) {
    return chi_scale * std::sqrt(r) * bessel_i(nu, z(r));
  };
  p.dchi = [nu, chi_scale, sigma, z](double r) {
    const double zz = z(r);
    return chi_scale * (0.5 / std::sqrt(r) * bessel_i(nu, zz) +
                        std::sqrt(r) * bessel_i_prime(nu, zz) *
                            (-sigma * zz / r));
  };
  // Subleading coefficient extracted numerically at large r.
  {
    const double R = 1e4;
    const double B =
        (p.phi(R) - std::pow(R, ell + 1.0)) * std::pow(R, double(ell));
    p.tail = {TailModel::Kind::LinearAsymptote, 1.0, B};
  }
  p.ell = ell;
  p.no_bound_states = true;
  return p;
}

SolutionPair pair_inverse_quartic_74(double g) {
  require(g > 0.0, "inverse-quartic-74: g > 0");
  const double sg = std::sqrt(g);

  SolutionPair p;
  p.name = "inverse-quartic-74";
  p.potential = potential_inverse_quartic_74(g);
  p.phi = [sg](double r) { return r * std::exp(-sg / r); };
  p.dphi = [sg](double r) { return std::exp(-sg / r) * (1.0 + sg / r); };
  p.chi = [sg](double r) { return r / sg * std::sinh(sg / r); };
  p.dchi = [sg](double r) {
    return std::sinh(sg / r) / sg - std::cosh(sg / r) / r;
  };
  p.tail = TailModel::linear(1.0, -sg);
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

// The printed chi = -pi sqrt(alpha r) K1 is negative with W != 1; the
// combination below has chi(0) = 1 and W = 1 exactly via
// I0(z) K1(z) + I1(z) K0(z) = 1/z.
SolutionPair pair_coulomb_72p(double alpha) {
  require(alpha > 0.0, "coulomb-72p: alpha > 0");
  const auto z = [alpha](double r) { return 2.0 * std::sqrt(alpha * r); };

  SolutionPair p;
  p.name = "coulomb-72p";
  p.potential = potential_coulomb_72p(alpha);
  p.phi = [alpha, z](double r) {
    if (r == 0.0) return 0.0;
    return std::sqrt(r / alpha) * bessel_i(1.0, z(r));
  };
  p.dphi = [z](double r) { return bessel_i(0.0, z(r)); };
  p.chi = [z](double r) {
    if (r == 0.0) return 1.0;
    const double zz = z(r);
    return zz * bessel_k(1.0, zz);
  };
  p.dchi = [alpha, z](double r) {
    if (r == 0.0) return -std::numeric_limits<double>::infinity();
    return -2.0 * alpha * bessel_k(0.0, z(r));
  };
  p.tail = TailModel::none();  // phi grows exponentially (long range)
  p.ell = 0;
  p.no_bound_states = true;
  return p;
}

}  // namespace

std::vector<FamilyInfo> list_families() {
  return {
      {"free", "-", "V = 0; phi = r, chi = 1", true},
      {"rational-exp-22", "lambda>0, a>0",
       "V = lambda a^2/(1+a r)^4, repulsive, ell = 0", true},
      {"inverse-square-quartic-23", "g>0, b>0 (pair: g>1)",
       "V = g b^2/(b^2+r^2)^2; sinh/arctan closed forms", true},
      {"exponential-70", "lambda, mu>0 (pair: lambda>0)",
       "V = lambda e^{-mu r}; Bessel I0/K0 closed forms", true},
      {"inverse-power-72", "g>0, n>2 ell+3, ell>=0",
       "V = g/r^n, strongly singular; fractional-order Bessel", true},
      {"inverse-quartic-74", "g>0",
       "V = g/r^4; phi = r e^{-sqrt(g)/r}, chi = r sinh(sqrt(g)/r)/sqrt(g)",
       true},
      {"coulomb-72p", "alpha>0",
       "V = alpha/r, long range; I1/K1 closed forms, domain-limited", true},
      {"chi-rational-79", "alpha>0, beta>0, n>1",
       "chi-first: chi = (1 + alpha (1+beta r)^{-n})/(1+alpha)", true},
      {"chi-exponential-82", "mu>0",
       "chi-first: chi = (1 + e^{-mu r})/2, V = mu^2 e^{-mu r}/(1+e^{-mu r})",
       true},
      {"log-singular-68-numeric", "alpha>0, g, 0<R<1",
       "V = [alpha/(r^2 log(1/r)) + g/(r^2 log^2(1/r))] for r < R; "
       "potential only",
       false},
  };
}

PotentialSpec make_potential(const FamilyId& family) {
  const auto& id = family.id;
  if (id == "free") return potential_free();
  if (id == "rational-exp-22")
    return potential_rational_exp_22(get_required(family, "lambda"),
                                     family.param("a", 1.0));
  if (id == "inverse-square-quartic-23")
    return potential_inverse_square_quartic_23(
        get_required(family, "g"), family.param("b", 1.0),
        static_cast<int>(family.param("ell", 0.0)));
  if (id == "exponential-70" || id == "exp")
    return potential_exponential_70(get_required(family, "lambda"),
                                    family.param("mu", 1.0));
  if (id == "inverse-power-72")
    return potential_inverse_power_72(get_required(family, "g"),
                                      family.param("n", 4.0),
                                      static_cast<int>(family.param("ell", 0.0)));
  if (id == "inverse-quartic-74")
    return potential_inverse_quartic_74(get_required(family, "g"));
  if (id == "coulomb-72p")
    return potential_coulomb_72p(get_required(family, "alpha"));
  if (id == "chi-rational-79" || id == "chi-exponential-82")
    return make_pair(family).potential;
  if (id == "log-singular-68-numeric")
    return potential_log_singular_68(get_required(family, "alpha"),
                                     family.param("g", 0.0),
                                     family.param("R", 0.5),
                                     static_cast<int>(family.param("ell", 0.0)));
  throw ParamDomain("unknown family id '" + id + "'");
}

SolutionPair make_pair(const FamilyId& family) {
  const auto& id = family.id;
  if (id == "free") return pair_free();
  if (id == "rational-exp-22")
    return pair_rational_exp_22(get_required(family, "lambda"),
                                family.param("a", 1.0));
  if (id == "inverse-square-quartic-23")
    return pair_inverse_square_quartic_23(get_required(family, "g"),
                                          family.param("b", 1.0));
  if (id == "exponential-70" || id == "exp")
    return pair_exponential_70(get_required(family, "lambda"),
                               family.param("mu", 1.0));
  if (id == "inverse-power-72")
    return pair_inverse_power_72(get_required(family, "g"),
                                 family.param("n", 4.0),
                                 static_cast<int>(family.param("ell", 0.0)));
  if (id == "inverse-quartic-74")
    return pair_inverse_quartic_74(get_required(family, "g"));
  if (id == "coulomb-72p")
    return pair_coulomb_72p(get_required(family, "alpha"));
  if (id == "chi-rational-79") {
    const double alpha = get_required(family, "alpha");
    const double beta = family.param("beta", 1.0);
    const double n = family.param("n", 2.0);
    require(alpha > 0.0, "chi-rational-79: alpha > 0");
    require(beta > 0.0, "chi-rational-79: beta > 0");
    require(n > 1.0, "chi-rational-79: n > 1");
    auto chi = [alpha, beta, n](double r) {
      return (1.0 + alpha * std::pow(1.0 + beta * r, -n)) / (1.0 + alpha);
    };
    auto dchi = [alpha, beta, n](double r) {
      return -alpha * beta * n * std::pow(1.0 + beta * r, -n - 1.0) /
             (1.0 + alpha);
    };
    auto d2chi = [alpha, beta, n](double r) {
      return alpha * beta * beta * n * (n + 1.0) *
             std::pow(1.0 + beta * r, -n - 2.0) / (1.0 + alpha);
    };
    auto [pot, pair] = make_chi_first(chi, dchi, d2chi);
    pair.name = "chi-rational-79";
    pair.potential.name = "chi-rational-79";
    pair.potential.params = {{"alpha", alpha}, {"beta", beta}, {"n", n}};
    return pair;
  }
  if (id == "chi-exponential-82") {
    const double mu = family.param("mu", 1.0);
    require(mu > 0.0, "chi-exponential-82: mu > 0");
    auto chi = [mu](double r) { return 0.5 * (1.0 + std::exp(-mu * r)); };
    auto dchi = [mu](double r) { return -0.5 * mu * std::exp(-mu * r); };
    auto d2chi = [mu](double r) { return 0.5 * mu * mu * std::exp(-mu * r); };
    auto [pot, pair] = make_chi_first(chi, dchi, d2chi);
    pair.name = "chi-exponential-82";
    pair.potential.name = "chi-exponential-82";
    pair.potential.params = {{"mu", mu}};
    return pair;
  }
  if (id == "log-singular-68-numeric")
    throw ParamDomain(
        "log-singular-68-numeric provides a potential only; no closed-form "
        "pair");
  throw ParamDomain("unknown family id '" + id + "'");
}

double pair_grid_min(const SolutionPair& pair) {
  if (pair.potential.origin_class == OriginClass::StronglySingular) {
    // keep the sinh(zc / r^sigma)-type factors below e^300
    const auto it = pair.potential.params.find("g");
    const double g = (it != pair.potential.params.end()) ? it->second : 1.0;
    const auto itn = pair.potential.params.find("n");
    const double n = (itn != pair.potential.params.end()) ? itn->second : 4.0;
    const double zc = 2.0 * std::sqrt(g) / (n - 2.0);
    return std::max(1e-3, std::pow(zc / 300.0, 2.0 / (n - 2.0)));
  }
  return 1e-3;
}

std::pair<PotentialSpec, SolutionPair> make_chi_first(
    const ScalarFn1& chi, const ScalarFn1& dchi, const ScalarFn1& d2chi,
    bool allow_free_limit) {
  // Admissibility probes on a sample grid.
  if (std::abs(chi(0.0) - 1.0) > 1e-12)
    throw NotAdmissible("make_chi_first: chi(0) must equal 1");
  const Array probe = log_grid(1e-3, 500.0, 200);
  for (double r : probe) {
    if (!(chi(r) > 0.0))
      throw NotAdmissible("make_chi_first: chi must stay positive");
    if (dchi(r) > 1e-12)
      throw NotAdmissible("make_chi_first: chi must be non-increasing");
  }
  // chi(inf) = 1/A with 1 < A < inf
  double R = 500.0;
  double chi_inf = chi(R);
  while (std::abs(chi(2.0 * R) - chi_inf) >
             1e-13 + 1e-10 * std::abs(chi_inf) &&
         R < 1e8) {
    R *= 2.0;
    chi_inf = chi(R);
  }
  if (std::abs(chi(2.0 * R) - chi_inf) > 1e-13 + 1e-10 * std::abs(chi_inf))
    throw NotAdmissible(
        "make_chi_first: chi(inf) did not converge to a positive limit");
  if (!(chi_inf > 0.0))
    throw NotAdmissible("make_chi_first: chi(inf) must be positive");
  const double A = 1.0 / chi_inf;
  if (!allow_free_limit && !(A > 1.0 + 1e-12))
    throw NotAdmissible("make_chi_first: need chi(inf) = 1/A with A > 1");

  PotentialSpec pot{"chi-first",
                    [chi, d2chi](double r) { return d2chi(r) / chi(r); },
                    0,
                    OriginClass::Regular,
                    TailClass::ShortRange,
                    {}};

  auto accum = std::make_shared<CumulativeIntegral>(
      [chi](double t) {
        const double c = chi(t);
        return 1.0 / (c * c);
      },
      0.0, Tolerance{1e-13, 1e-15, 200000});

  SolutionPair pair;
  pair.name = "chi-first";
  pair.potential = pot;
  pair.chi = chi;
  pair.dchi = dchi;
  pair.phi = [chi, accum](double r) { return chi(r) * (*accum)(r); };
  pair.dphi = [chi, dchi, accum](double r) {
    return dchi(r) * (*accum)(r) + 1.0 / chi(r);
  };
  // phi ~ chi_inf * (A^2 r + const) = A r + B
  {
    const double R0 = std::min(R, 1e4);
    const double B = pair.phi(R0) - A * R0;
    pair.tail = {TailModel::Kind::LinearAsymptote, A, B};
  }
  pair.ell = 0;
  pair.no_bound_states = true;
  return {pot, pair};
}

GridSample sample_potential(const PotentialSpec& p, const Array& radii,
                            bool with_centrifugal) {
  GridSample g;
  g.r = radii;
  g.y = Array(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (r == 0.0 && p.origin_class == OriginClass::StronglySingular)
      throw DomainError("sample_potential: " + p.name + " is singular at r=0");
    g.y[i] = with_centrifugal ? p.effective(r) : p.evaluate(r);
  }
  g.validate();
  return g;
}

}  // namespace zesolve
