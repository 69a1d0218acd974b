#pragma once

#include <functional>
#include <map>
#include <string>

#include "zesolve/common.hpp"

namespace zesolve {

using ScalarFn1 = std::function<double(double)>;

enum class OriginClass { Regular, StronglySingular };
enum class TailClass { ShortRange, LongRange };

/// An evaluatable potential V(r) (inverse length squared), without the
/// centrifugal term, plus the angular momentum it is meant to be used with.
struct PotentialSpec {
  std::string name;
  ScalarFn1 evaluate;
  int ell = 0;
  OriginClass origin_class = OriginClass::Regular;
  TailClass tail_class = TailClass::ShortRange;
  std::map<std::string, double> params;

  double operator()(double r) const { return evaluate(r); }

  /// V(r) + ell(ell+1)/r^2, the coefficient of the zero-energy equation.
  double effective(double r) const {
    double v = evaluate(r);
    if (ell > 0) v += ell * (ell + 1.0) / (r * r);
    return v;
  }
};

/// The two zero-energy solutions of a potential, normalized to Wronskian
/// phi' chi - phi chi' = 1. phi is the regular solution (phi(0) = 0), chi the
/// second solution with chi(0) = 1 for regular ell = 0 potentials.
struct SolutionPair {
  std::string name;
  PotentialSpec potential;
  ScalarFn1 phi, dphi, chi, dchi;
  TailModel tail;  // phi ~ A r^{ell+1} + B r^{-ell}
  int ell = 0;
  bool no_bound_states = false;
};

}  // namespace zesolve
