#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace zesolve {

using Array = Eigen::ArrayXd;

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure mode surfaces as a typed exception carrying
// the violated condition in what().
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergent : Error {
  using Error::Error;
};
struct BadTail : Error {
  using Error::Error;
};
struct StepUnderflow : Error {
  using Error::Error;
};
struct Overflow : Error {
  using Error::Error;
};
struct NotBracketed : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct ParamDomain : Error {
  using Error::Error;
};
struct NotAdmissible : Error {
  using Error::Error;
};
struct NoBoundStateViolation : Error {
  using Error::Error;
};
struct TailDivergence : Error {
  using Error::Error;
};
struct AdmissibilityError : Error {
  using Error::Error;
};
struct DepthLimit : Error {
  using Error::Error;
};
struct Unstable : Error {
  using Error::Error;
};
struct PoorFit : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Shared value types
// ---------------------------------------------------------------------------

/// Relative/absolute tolerance pair plus a work budget.
struct Tolerance {
  double rel = 1e-10;
  double abs = 1e-12;
  int max_steps = 100000;

  void validate() const {
    if (!(rel > 0.0)) throw ParamDomain("Tolerance: rel must be > 0");
    if (!(abs >= 0.0)) throw ParamDomain("Tolerance: abs must be >= 0");
    if (max_steps < 1) throw ParamDomain("Tolerance: max_steps must be >= 1");
  }
};

/// Asymptotic description of a function for r -> infinity.
/// kind == LinearAsymptote means f(r) = A*r + B + o(1) with A > 0.
struct TailModel {
  enum class Kind { LinearAsymptote, PowerDecay, None };
  Kind kind = Kind::None;
  double A = 0.0;
  double B = 0.0;

  static TailModel linear(double A, double B) {
    if (!(A > 0.0))
      throw ParamDomain("TailModel: linear asymptote requires A > 0");
    return {Kind::LinearAsymptote, A, B};
  }
  static TailModel power_decay() { return {Kind::PowerDecay, 0.0, 0.0}; }
  static TailModel none() { return {Kind::None, 0.0, 0.0}; }
};

/// Function values (and optionally derivatives) on a strictly increasing
/// radial grid.
struct GridSample {
  Array r;
  Array y;
  std::optional<Array> dy;

  void validate() const {
    if (r.size() < 2) throw ParamDomain("GridSample: need at least 2 points");
    if (r.size() != y.size())
      throw ParamDomain("GridSample: r/y length mismatch");
    if (dy && dy->size() != r.size())
      throw ParamDomain("GridSample: r/dy length mismatch");
    if (r[0] < 0.0) throw ParamDomain("GridSample: r[0] must be >= 0");
    for (Eigen::Index i = 1; i < r.size(); ++i)
      if (!(r[i] > r[i - 1]))
        throw ParamDomain("GridSample: r must be strictly increasing");
  }
};

/// Evaluations saturate here; anything beyond raises Overflow instead of
/// silently producing inf.
inline constexpr double kMagnitudeCap = 1e300;

inline Array linear_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw ParamDomain("linear_grid: bad grid spec");
  return Array::LinSpaced(n, lo, hi);
}

inline Array log_grid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo) || !(lo > 0.0))
    throw ParamDomain("log_grid: bad grid spec");
  return Array::LinSpaced(n, std::log(lo), std::log(hi)).exp();
}

}  // namespace zesolve
