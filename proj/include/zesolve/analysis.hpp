#pragma once

#include <string>
#include <vector>

#include "zesolve/potential.hpp"

namespace zesolve {

struct CheckFlag {
  std::string name;
  bool passed;
};

struct VerificationReport {
  double max_wronskian_dev = 0.0;
  double max_residual_rel = 0.0;
  int node_count = 0;
  double bargmann_bound = 0.0;
  TailModel tail;
  std::vector<CheckFlag> flags;

  bool all_passed() const {
    for (const auto& f : flags)
      if (!f.passed) return false;
    return true;
  }
};

/// Max over the grid of |phi'' - (V + ell(ell+1)/r^2) phi| relative to
/// |V_eff phi| with a floor tied to the largest |V_eff phi| and the solution
/// scale. phi'' comes from a 5-point stencil whose step adapts to the local
/// curvature scale 1/sqrt(|V_eff|).
double residual(const PotentialSpec& V, const ScalarFn1& sol,
                const Array& grid);

/// Sign changes of sol on (r_lo, r_hi], counted on a grid refined until two
/// successive refinements agree. Throws Unstable otherwise.
int count_nodes(const ScalarFn1& sol, double r_lo, double r_hi,
                int initial_points = 400);

/// Bargmann bound int_0^inf r |V1(r)| dr. NonConvergent for long-range V1.
double bargmann_bound(const PotentialSpec& V1, const Tolerance& tol = {});

struct AsymptoticFit {
  TailModel tail;      // A r^{ell+1} + B r^{-ell}
  double fit_residual; // relative RMS of the fit over the window
};

/// Least-squares fit of sol ~ A r^{ell+1} + B r^{-ell} over [lo, hi].
/// Throws PoorFit when the relative fit residual exceeds max_fit_residual.
AsymptoticFit asymptotic_fit(const ScalarFn1& sol, int ell, double lo,
                             double hi, double max_fit_residual = 1e-5);

/// True iff phi has no node on (0, r_max] and the fitted tail slope exceeds
/// a_min (A = 0 is the zero-energy resonance, excluded).
struct Certification {
  bool certified;
  int node_count;
  double tail_slope;
};
Certification certify_no_bound_states(const SolutionPair& pair,
                                      double r_max = 50.0,
                                      double a_min = 1e-6);

/// Full verification of a solution pair on its working grid.
VerificationReport verify_pair(const SolutionPair& pair, double r_max = 50.0);

}  // namespace zesolve
