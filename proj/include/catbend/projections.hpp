#pragma once

// Spherical Mercator and central cylindrical projections, loxodromes.
//
// Both projections share x = r * lon. Their ordinates are
//   Mercator:            y = r * gd_inverse(lat)
//   central cylindrical: y = r * tan(lat)
// Longitudes are taken as given on the forward path (a loxodrome may wind
// past the antimeridian and must stay one straight segment); inverse
// projections normalize to (-pi, pi].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "catbend/errors.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/quadrature.hpp"

namespace catbend {

struct GeoPoint {
  double lat = 0;  // radians, |lat| < pi/2
  double lon = 0;  // radians

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

struct PlanePoint {
  double x = 0;  // east
  double y = 0;  // north

  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// Wraps a longitude into (-pi, pi]; an exact -pi maps to +pi.
inline double normalize_longitude(double lon) {
  detail::require_finite(lon, "longitude");
  double r = std::remainder(lon, 2 * kPi);
  if (r <= -kPi) r = kPi;
  return r;
}

namespace detail {

inline void require_radius(double radius) {
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw DomainError("radius must be positive and finite");
  }
}

}  // namespace detail

inline PlanePoint mercator_forward(const GeoPoint& p, double radius) {
  detail::require_radius(radius);
  detail::require_finite(p.lon, "longitude");
  return {radius * p.lon, radius * gd_inverse(p.lat)};
}

/// sign(phi) * acosh(sec phi). Equal to gd_inverse; kept as an independent
/// algebraic route for the verification suite.
inline double mercator_y_arcosh(double phi) {
  check_circular_angle(phi);
  return std::copysign(std::acosh(1 / std::cos(phi)), phi);
}

inline GeoPoint mercator_inverse(const PlanePoint& q, double radius) {
  detail::require_radius(radius);
  detail::require_finite(q.x, "x");
  detail::require_finite(q.y, "y");
  return {gd(q.y / radius), normalize_longitude(q.x / radius)};
}

inline PlanePoint central_cylindrical_forward(const GeoPoint& p, double radius) {
  detail::require_radius(radius);
  detail::require_finite(p.lon, "longitude");
  check_circular_angle(p.lat);
  return {radius * p.lon, radius * std::tan(p.lat)};
}

inline GeoPoint central_cylindrical_inverse(const PlanePoint& q, double radius) {
  detail::require_radius(radius);
  detail::require_finite(q.x, "x");
  detail::require_finite(q.y, "y");
  return {std::atan(q.y / radius), normalize_longitude(q.x / radius)};
}

/// Point scale of the Mercator projection, equal along meridian and parallel.
inline double mercator_scale_factor(double phi) {
  check_circular_angle(phi);
  return 1 / std::cos(phi);
}

/// Relative mismatch between a central-difference meridian scale of the
/// Mercator ordinate and sec(phi).
inline double conformality_residual(double phi, double h = kDefaultDerivativeStep) {
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("step h must be positive");
  check_circular_angle(phi);
  check_circular_angle(std::fabs(phi) + h);
  const double fd = central_difference([](double t) { return gd_inverse(t); }, phi, h);
  const double scale = mercator_scale_factor(phi);
  return std::fabs(fd - scale) / scale;
}

/// Bearings within this distance of due east/west are rejected.
inline constexpr double kDegenerateBearingMargin = 1e-9;

/// Constant-bearing track between two parallels.
struct Loxodrome {
  double start_lon = 0;  // longitude at the southern parallel, radians
  double bearing = 0;    // clockwise from north, [0, pi]
  double south = 0;      // latitude span, south < north
  double north = 0;
};

inline void validate(const Loxodrome& lox) {
  detail::require_finite(lox.start_lon, "start longitude");
  detail::require_finite(lox.bearing, "bearing");
  if (lox.bearing < 0 || lox.bearing > kPi) {
    throw DomainError("bearing must lie in [0, pi]");
  }
  if (std::fabs(lox.bearing - kHalfPi) < kDegenerateBearingMargin) {
    throw DegenerateBearingError(
        "bearing is due east/west; a parallel has no latitude span");
  }
  check_circular_angle(lox.south);
  check_circular_angle(lox.north);
  if (!(lox.south < lox.north)) {
    throw DomainError("loxodrome span requires south < north");
  }
}

/// Mercator-plane slope dlon/dpsi of a loxodrome. Meridians are exactly 0.
inline double loxodrome_slope(const Loxodrome& lox) {
  if (lox.bearing == 0 || lox.bearing == kPi) return 0;
  return std::tan(lox.bearing);
}

/// n points uniformly spaced in Mercator ordinate from south to north.
/// Longitudes are continuous (not wrapped).
inline std::vector<GeoPoint> loxodrome_points(const Loxodrome& lox, std::size_t n) {
  validate(lox);
  if (n < 2) throw DomainError("a loxodrome needs at least two samples");

  const double psi_south = gd_inverse(lox.south);
  const double psi_north = gd_inverse(lox.north);
  const double span = psi_north - psi_south;
  const double slope = loxodrome_slope(lox);

  std::vector<GeoPoint> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dpsi = i + 1 == n ? span
                                   : span * static_cast<double>(i) /
                                         static_cast<double>(n - 1);
    const double psi = psi_south + dpsi;
    const double lat = i == 0 ? lox.south : i + 1 == n ? lox.north : gd(psi);
    points.push_back({lat, lox.start_lon + slope * dpsi});
  }
  return points;
}

/// Largest perpendicular distance from the chord through the first and last
/// point, divided by the chord length. Zero for fewer than three points.
inline double collinearity_residual(std::span<const PlanePoint> pts) {
  if (pts.size() < 3) return 0;
  const PlanePoint a = pts.front();
  const PlanePoint b = pts.back();
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double chord = std::hypot(dx, dy);
  if (chord == 0) throw DomainError("collinearity needs distinct endpoints");
  double worst = 0;
  for (const auto& p : pts) {
    const double cross = dx * (p.y - a.y) - dy * (p.x - a.x);
    worst = std::max(worst, std::fabs(cross) / chord);
  }
  return worst / chord;
}

}  // namespace catbend
