#pragma once

#include <memory>
#include <vector>

#include "zesolve/potential.hpp"

namespace zesolve {

/// The monotone change of variable x(r) = phi0(r)/chi0(r) with its exact
/// derivative 1/chi0(r)^2 and a bracketed numerical inverse.
class MappingFn {
 public:
  MappingFn(ScalarFn1 forward, ScalarFn1 derivative, double r_max,
            Tolerance tol);

  double forward(double r) const { return forward_(r); }
  double derivative(double r) const { return derivative_(r); }
  double inverse(double x) const;
  double r_max() const { return r_max_; }

 private:
  ScalarFn1 forward_;
  ScalarFn1 derivative_;
  double r_max_;
  Tolerance tol_;
};

/// Second solution from the regular one: chi(r) = phi(r) int_r^inf dt/phi^2.
/// Throws NoBoundStateViolation if phi changes sign on the probed grid and
/// TailDivergence when the tail slope is not positive (zero-energy
/// resonance excluded).
struct SecondSolution {
  ScalarFn1 chi;
  ScalarFn1 dchi;
};
SecondSolution chi_from_phi(const ScalarFn1& phi, const ScalarFn1& dphi,
                            const TailModel& tail, int ell = 0,
                            const Tolerance& tol = {});

/// Regular solution from the second one: phi(r) = chi(r) int_0^r dt/chi^2.
struct RegularSolution {
  ScalarFn1 phi;
  ScalarFn1 dphi;
};
RegularSolution phi_from_chi(const ScalarFn1& chi, const ScalarFn1& dchi,
                             const Tolerance& tol = {});

MappingFn build_mapping(const SolutionPair& pair, double r_max,
                        const Tolerance& tol = {});

/// A composed potential V0 + ell(ell+1)/r^2 + chi0^{-4} V1(phi0/chi0)
/// bundled with its closed-form solution chi0 * phi1(x(r)).
class ComposedSystem {
 public:
  ComposedSystem(SolutionPair base, PotentialSpec inner, ScalarFn1 phi1,
                 ScalarFn1 dphi1, double r_max, int depth,
                 std::vector<std::string> provenance, Tolerance tol);

  /// Composed potential including the centrifugal term via effective().
  const PotentialSpec& potential() const { return composed_; }
  double solution(double r) const;
  double solution_derivative(double r) const;

  const SolutionPair& base() const { return base_; }
  const PotentialSpec& inner() const { return inner_; }
  double inner_solution(double x) const { return phi1_(x); }
  double inner_solution_derivative(double x) const { return dphi1_(x); }
  const MappingFn& mapping() const { return *mapping_; }
  int depth() const { return depth_; }
  double r_max() const { return r_max_; }
  const std::vector<std::string>& provenance() const { return provenance_; }

 private:
  SolutionPair base_;
  PotentialSpec inner_;
  ScalarFn1 phi1_, dphi1_;
  std::shared_ptr<MappingFn> mapping_;
  PotentialSpec composed_;
  double r_max_;
  int depth_;
  std::vector<std::string> provenance_;
};

/// Composition of two solvable systems. base must certify no bound states;
/// inner must be
/// a short-range ell = 0 potential (any finite number of bound states). When
/// phi1/dphi1 are omitted the inner regular solution is integrated
/// numerically over the needed x range.
ComposedSystem compose(const SolutionPair& base, const PotentialSpec& inner,
                       ScalarFn1 phi1 = nullptr, ScalarFn1 dphi1 = nullptr,
                       double r_max = 0.0, const Tolerance& tol = {});

/// Repeated composition with the same base: depth 1 is compose; depth k+1
/// composes base with the depth-k potential and solution. DepthLimit beyond
/// max_depth.
ComposedSystem iterate(const SolutionPair& base, const PotentialSpec& inner,
                       int depth, ScalarFn1 phi1 = nullptr,
                       ScalarFn1 dphi1 = nullptr, double r_max = 0.0,
                       const Tolerance& tol = {}, int max_depth = 4);

}  // namespace zesolve
