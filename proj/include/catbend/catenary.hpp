#pragma once

// Catenary y = a cosh(x/a) and the bend that carries a central cylindrical
// map onto the Mercator map.
//
// The arc length from the vertex to abscissa x is a sinh(x/a). A flat map
// ordinate v laid along the catenary therefore lands at abscissa
// a asinh(v/a); with a = R and v = R tan(phi) that is R gd_inverse(phi),
// the Mercator ordinate. Only the abscissa (the coordinate in the plane of
// the two supported edges) is exposed; the sag direction never appears.

#include <cmath>
#include <limits>
#include <string>

#include "catbend/errors.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/projections.hpp"

namespace catbend {

class Catenary {
 public:
  explicit Catenary(double a) : a_(a) {
    if (!(a > 0) || !std::isfinite(a)) {
      throw DomainError("catenary scale must be positive and finite");
    }
  }

  double scale() const noexcept { return a_; }

  /// Height above the directrix at abscissa x.
  double height(double x) const { return a_ * std::cosh(x / a_); }

 private:
  double a_;
};

/// Signed arc length from the vertex to abscissa x. Odd in x.
inline double catenary_arc_length(const Catenary& c, double x) {
  detail::require_finite(x, "abscissa");
  const double a = c.scale();
  return std::copysign(a * std::sinh(std::fabs(x) / a), x);
}

/// Abscissa reached after signed arc length s.
inline double catenary_arc_length_inverse(const Catenary& c, double s) {
  detail::require_finite(s, "arc length");
  const double a = c.scale();
  return std::copysign(a * std::asinh(std::fabs(s) / a), s);
}

/// Flat ordinate v -> edge-plane coordinate after bending along c.
inline double bend_transform(double v, const Catenary& c) {
  return catenary_arc_length_inverse(c, v);
}

/// Edge-plane coordinate u -> flat ordinate.
inline double unbend_transform(double u, const Catenary& c) {
  return catenary_arc_length(c, u);
}

/// Below this tan(alpha) the ratio asinh(t)/t uses its Maclaurin series.
inline constexpr double kSeriesThreshold = 1e-4;

/// asinh(t)/t, accurate as t -> 0.
inline double asinh_ratio(double t) {
  if (std::fabs(t) < kSeriesThreshold) {
    const double t2 = t * t;
    return 1 - t2 / 6 + 3 * t2 * t2 / 40;
  }
  return std::asinh(t) / t;
}

/// Physical bending of a central cylindrical map printed between latitudes
/// -alpha and +alpha with sheet height H. R is the radius of the sphere the
/// sheet was drawn for; D is the distance between the supported north and
/// south edges at which the hanging sheet projects onto a Mercator map.
struct BendSpec {
  double alpha;  // radians, 0 < alpha < pi/2
  double height;
  double radius;
  double edge_distance;

  Catenary catenary() const { return Catenary(radius); }

  /// Mercator half-width in sphere radii, asinh(tan alpha).
  double psi_max() const { return std::asinh(std::tan(alpha)); }
};

inline BendSpec bend_params(double alpha, double height) {
  detail::require_finite(alpha, "alpha");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  check_circular_angle(alpha);
  if (!(height > 0) || !std::isfinite(height)) {
    throw DomainError("map height must be positive and finite");
  }
  const double t = std::tan(alpha);
  return {alpha, height, height / (2 * t), height * asinh_ratio(t)};
}

namespace detail {

// Edge points computed as R tan(alpha) may overshoot H/2 by a few ulps.
inline bool beyond(double v, double half_extent) {
  return std::fabs(v) >
         half_extent * (1 + 8 * std::numeric_limits<double>::epsilon());
}

}  // namespace detail

/// Bends one point of the flat sheet; x is along the fold axis and unchanged.
inline PlanePoint bend_map_point(const PlanePoint& q, const BendSpec& spec) {
  detail::require_finite(q.x, "x");
  detail::require_finite(q.y, "y");
  if (detail::beyond(q.y, spec.height / 2)) {
    throw OutOfMapError("y = " + std::to_string(q.y) +
                        " lies outside the printed sheet");
  }
  return {q.x, bend_transform(q.y, spec.catenary())};
}

/// Inverse of bend_map_point; |q.y| must not exceed D/2.
inline PlanePoint unbend_map_point(const PlanePoint& q, const BendSpec& spec) {
  detail::require_finite(q.x, "x");
  detail::require_finite(q.y, "y");
  if (detail::beyond(q.y, spec.edge_distance / 2)) {
    throw OutOfMapError("y = " + std::to_string(q.y) +
                        " lies outside the projected sheet");
  }
  return {q.x, unbend_transform(q.y, spec.catenary())};
}

}  // namespace catbend
