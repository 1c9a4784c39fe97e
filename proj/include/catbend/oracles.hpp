#pragma once

// Quadrature evaluations of the two defining integrals:
//   Mercator ordinate  int_0^phi sec t dt
//   catenary length    int_0^x sqrt(1 + sinh^2(t/a)) dt
// The integrands are written from their definitions; the closed forms they
// check are never called from here.

#include <cmath>

#include "catbend/catenary.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/quadrature.hpp"

namespace catbend {

inline constexpr double kDefaultOracleTolerance = 1e-13;

inline double secant_integral_oracle(double phi,
                                     double tol = kDefaultOracleTolerance) {
  check_circular_angle(phi);
  const auto sec = [](double t) { return 1 / std::cos(t); };
  const double magnitude = integrate(sec, 0, std::fabs(phi), tol).value;
  return std::copysign(magnitude, phi);
}

inline double arc_length_oracle(const Catenary& c, double x,
                                double tol = kDefaultOracleTolerance) {
  detail::require_finite(x, "abscissa");
  const double a = c.scale();
  const auto element = [a](double t) {
    const double slope = std::sinh(t / a);
    return std::sqrt(1 + slope * slope);
  };
  const double magnitude = integrate(element, 0, std::fabs(x), tol).value;
  return std::copysign(magnitude, x);
}

}  // namespace catbend
