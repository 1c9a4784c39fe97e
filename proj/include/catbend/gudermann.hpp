#pragma once

// Gudermannian function family. Circular angles (latitudes) and hyperbolic
// measures (Mercator ordinates) are plain radians; phi = gd(psi).
//
//   gd(psi)         = atan(sinh psi)
//   gd_inverse(phi) = asinh(tan phi) = ln tan(phi/2 + pi/4) = int_0^phi sec t dt
//
// tan phi = sinh psi and sec phi = cosh psi hold along the pair.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "catbend/errors.hpp"

namespace catbend {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;

/// Latitudes with |phi| >= pi/2 - kPoleMargin are rejected, never clamped.
inline constexpr double kPoleMargin = 1e-12;

inline constexpr double deg_to_rad(double deg) { return deg * (kPi / 180); }
inline constexpr double rad_to_deg(double rad) { return rad * (180 / kPi); }

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

}  // namespace detail

/// Throws unless |phi| is strictly inside the usable latitude band.
inline void check_circular_angle(double phi) {
  detail::require_finite(phi, "circular angle");
  if (std::fabs(phi) >= kHalfPi - kPoleMargin) throw PoleError(phi);
}

/// Gudermannian: circular angle with tangent sinh(psi). Exactly odd.
inline double gd(double psi) {
  detail::require_finite(psi, "hyperbolic measure");
  return std::copysign(std::atan(std::sinh(std::fabs(psi))), psi);
}

/// Inverse Gudermannian, i.e. the Mercator ordinate of a unit sphere.
/// Evaluated as asinh(tan phi); the log-tan form cancels badly near 0.
inline double gd_inverse(double phi) {
  check_circular_angle(phi);
  return std::copysign(std::asinh(std::tan(std::fabs(phi))), phi);
}

/// Textbook form ln tan(phi/2 + pi/4), odd-extended. Only used to
/// cross-check gd_inverse.
inline double gd_inverse_lntan(double phi) {
  check_circular_angle(phi);
  if (phi == 0) return phi;
  return std::copysign(std::log(std::tan(std::fabs(phi) / 2 + kPi / 4)), phi);
}

struct TanSinhPair {
  double length;  // tan(phi), the central cylindrical ordinate
  double psi;     // gd_inverse(phi), with sinh(psi) == length
};

inline TanSinhPair tan_sinh_pair(double phi) {
  const double psi = gd_inverse(phi);
  return {std::tan(phi), psi};
}

/// |sec(phi) - cosh(gd_inverse(phi))|
inline double sec_cosh_check(double phi) {
  const double psi = gd_inverse(phi);
  return std::fabs(1 / std::cos(phi) - std::cosh(psi));
}

}  // namespace catbend
