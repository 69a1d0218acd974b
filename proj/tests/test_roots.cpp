#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zesolve/roots.hpp"

using namespace zesolve;

TEST_CASE("identity and cube-root targets") {
  Tolerance tol{1e-12, 1e-14, 100000};
  CHECK(invert_monotone([](double r) { return r; }, 3.7, 0.0, 10.0, tol) ==
        doctest::Approx(3.7).epsilon(1e-12));
  CHECK(invert_monotone([](double r) { return r * r * r; }, 8.0, 0.0, 10.0,
                        tol) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("derivative-accelerated refinement agrees with bisection") {
  Tolerance tol{1e-13, 1e-15, 100000};
  auto m = [](double r) { return r + std::sin(r); };
  auto dm = [](double r) { return 1.0 + std::cos(r); };
  const double target = m(2.3456);
  const double plain = invert_monotone(m, target, 0.0, 10.0, tol);
  const double newton = invert_monotone(m, target, 0.0, 10.0, tol, dm);
  CHECK(plain == doctest::Approx(2.3456).epsilon(1e-12));
  CHECK(newton == doctest::Approx(2.3456).epsilon(1e-12));
}

TEST_CASE("round-trip property on a stiff monotone map") {
  Tolerance tol{1e-12, 1e-14, 100000};
  auto m = [](double r) { return std::expm1(r) + 0.001 * r; };
  for (double r : {0.01, 0.5, 2.0, 6.0}) {
    const double back = invert_monotone(m, m(r), 0.0, 10.0, tol);
    CHECK(back == doctest::Approx(r).epsilon(1e-10));
  }
}

TEST_CASE("not-bracketed targets are rejected") {
  Tolerance tol{1e-12, 1e-14, 100000};
  CHECK_THROWS_AS(
      invert_monotone([](double r) { return r; }, 20.0, 0.0, 10.0, tol),
      NotBracketed);
  CHECK_THROWS_AS(
      invert_monotone([](double r) { return r; }, -1.0, 0.0, 10.0, tol),
      NotBracketed);
}
