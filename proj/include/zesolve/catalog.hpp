#pragma once

#include <map>
#include <string>
#include <vector>

#include "zesolve/potential.hpp"

namespace zesolve {

/// Names a closed-form family plus its parameters. Recognized ids:
///   free                      (no parameters)
///   rational-exp-22           lambda > 0, a > 0
///   inverse-square-quartic-23 g, b > 0 (pair needs g > 1)
///   exponential-70            lambda, mu > 0 (pair needs lambda > 0)
///   inverse-power-72          g > 0, n > 2 ell + 3, ell >= 0
///   inverse-quartic-74        g > 0
///   coulomb-72p               alpha > 0
///   chi-rational-79           alpha > 0, beta > 0, n > 1
///   chi-exponential-82        mu > 0
///   log-singular-68-numeric   alpha > 0, g, R in (0,1); potential only
struct FamilyId {
  std::string id;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
};

struct FamilyInfo {
  std::string id;
  std::string parameters;
  std::string description;
  bool has_pair;
};

std::vector<FamilyInfo> list_families();

/// Potential only; parameter domains are looser than for make_pair (e.g. an
/// attractive exponential is a valid inner potential even though its pair
/// closed form needs lambda > 0).
PotentialSpec make_potential(const FamilyId& family);

/// Closed-form solution pair, rescaled so W(phi, chi) = 1 exactly and, where
/// the printed second solution grows, recombined so chi(inf) = 1/A.
SolutionPair make_pair(const FamilyId& family);

/// Smallest radius at which the pair's closed forms stay inside double
/// range (sinh(sqrt(g)/r) style factors diverge fast for singular families).
double pair_grid_min(const SolutionPair& pair);

/// Builds a potential from a hand-picked second solution: V0 = chi''/chi,
/// phi0 = chi * int_0^r dt/chi^2. chi must be positive, decreasing, twice
/// differentiable with chi(0) = 1 and chi(inf) = 1/A, 1 < A < inf. With
/// allow_free_limit the boundary case A = 1 (chi == 1) is accepted.
std::pair<PotentialSpec, SolutionPair> make_chi_first(
    const ScalarFn1& chi, const ScalarFn1& dchi, const ScalarFn1& d2chi,
    bool allow_free_limit = false);

/// Pointwise evaluation of p on the given radii; with_centrifugal adds
/// ell(ell+1)/r^2. DomainError at r = 0 for strongly singular potentials.
GridSample sample_potential(const PotentialSpec& p, const Array& radii,
                            bool with_centrifugal = false);

}  // namespace zesolve
