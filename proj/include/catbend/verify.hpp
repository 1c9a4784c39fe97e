#pragma once

// Self-verification suite: every closed form checked against an independent
// route (quadrature, finite differences, or a second algebraic form) on a
// latitude grid. Grid density depends on the level; tolerances do not.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catbend/catenary.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/oracles.hpp"
#include "catbend/projections.hpp"
#include "catbend/quadrature.hpp"

namespace catbend {

enum class VerifyLevel { kQuick, kFull };

struct CheckResult {
  std::string name;
  double max_error = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool overall() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

// Symmetric grid of latitudes in radians, limit and step in degrees.
// Built from integer multiples so grids are reproducible.
inline std::vector<double> latitude_grid(double limit_deg, double step_deg) {
  std::vector<double> out;
  const long count = std::lround(limit_deg / step_deg);
  for (long k = -count; k <= count; ++k) out.push_back(deg_to_rad(k * step_deg));
  return out;
}

inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

class CheckRunner {
 public:
  explicit CheckRunner(VerifyReport& report) : report_(report) {}

  /// Records max(errors); passes when max <= tolerance. An exception fails
  /// the check with infinite error.
  void run(std::string name, double tolerance, const std::function<double()>& body) {
    CheckResult r{std::move(name), 0, tolerance, false};
    try {
      r.max_error = body();
      r.pass = std::isfinite(r.max_error) && r.max_error <= tolerance;
    } catch (const std::exception&) {
      r.max_error = std::numeric_limits<double>::infinity();
    }
    report_.checks.push_back(std::move(r));
  }

 private:
  VerifyReport& report_;
};

}  // namespace detail

inline VerifyReport run_verification(VerifyLevel level) {
  const bool full = level == VerifyLevel::kFull;
  const double step = full ? 0.1 : 0.5;  // degrees
  const double oracle_step = full ? 0.1 : 1.0;

  VerifyReport report;
  detail::CheckRunner check(report);
  const auto lat85 = detail::latitude_grid(85, step);

  check.run("gd_odd", 0, [&] {
    double worst = 0;
    for (const double psi : detail::linear_grid(0, 20, full ? 4001 : 401)) {
      worst = std::max(worst, std::fabs(gd(-psi) + gd(psi)));
    }
    return worst;
  });

  check.run("gd_roundtrip", 1e-13, [&] {
    double worst = 0;
    for (const double phi : lat85) worst = std::max(worst, std::fabs(gd(gd_inverse(phi)) - phi));
    return worst;
  });

  check.run("tan_sinh", 1e-11, [&] {
    double worst = 0;
    for (const double phi : lat85) {
      const double l = std::tan(phi);
      worst = std::max(worst, std::fabs(l - std::sinh(gd_inverse(phi))) / (1 + std::fabs(l)));
    }
    return worst;
  });

  check.run("sec_cosh", 1e-11, [&] {
    double worst = 0;
    for (const double phi : lat85) {
      worst = std::max(worst, sec_cosh_check(phi) * std::cos(phi));
    }
    return worst;
  });

  check.run("gd_inverse_monotone", 0, [&] {
    double violations = 0;
    const auto grid = detail::latitude_grid(89, step / 10);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (!(gd_inverse(grid[i]) > gd_inverse(grid[i - 1]))) violations += 1;
    }
    return violations;
  });

  check.run("secant_quadrature", 1e-11, [&] {
    double worst = 0;
    for (const double phi : detail::latitude_grid(85, oracle_step)) {
      worst = std::max(worst, std::fabs(gd_inverse(phi) - secant_integral_oracle(phi)));
    }
    return worst;
  });

  // Ratio of true error to the reported estimate; honest means <= 10.
  check.run("quadrature_error_honesty", 10, [&] {
    double worst = 0;
    const auto record = [&](const QuadratureResult& q, double truth) {
      const double err = std::fabs(q.value - truth);
      if (err == 0) return;
      worst = std::max(worst, q.error_estimate > 0 ? err / q.error_estimate
                                                   : std::numeric_limits<double>::infinity());
    };
    const auto sec = [](double t) { return 1 / std::cos(t); };
    for (const double phi : detail::latitude_grid(85, 5)) {
      if (phi <= 0) continue;
      record(integrate(sec, 0, phi, 1e-13), std::asinh(std::tan(phi)));
    }
    for (const double x : {0.5, 1.0, 2.0, 3.0}) {
      record(integrate([](double t) { return std::cosh(t); }, 0, x, 1e-13), std::sinh(x));
    }
    for (int degree = 0; degree <= 6; ++degree) {
      const auto mono = [degree](double t) { return std::pow(t, degree); };
      record(integrate(mono, 0, 2, 1e-13), std::pow(2.0, degree + 1) / (degree + 1));
    }
    return worst;
  });

  check.run("lntan_equals_arcosh", 1e-11, [&] {
    double worst = 0;
    for (const double phi : detail::latitude_grid(89, 0.1)) {
      const double psi = gd_inverse_lntan(phi);
      worst = std::max(worst, std::fabs(psi - mercator_y_arcosh(phi)) / (1 + std::fabs(psi)));
    }
    return worst;
  });

  check.run("bend_equals_mercator", 1e-12, [&] {
    double worst = 0;
    for (const double a : {0.5, 1.0, 6371.0}) {
      const Catenary c(a);
      for (const double phi : detail::latitude_grid(85, 0.1)) {
        const double psi = gd_inverse(phi);
        const double err = std::fabs(bend_transform(a * std::tan(phi), c) - a * psi);
        worst = std::max(worst, err / (a * (1 + std::fabs(psi))));
      }
    }
    return worst;
  });

  check.run("arc_length_quadrature", 1e-10, [&] {
    double worst = 0;
    for (const double a : {0.5, 1.0, 2.0}) {
      const Catenary c(a);
      for (const double x : detail::linear_grid(0, 3, full ? 301 : 31)) {
        worst = std::max(worst, std::fabs(catenary_arc_length(c, x) - arc_length_oracle(c, x)));
      }
    }
    return worst;
  });

  check.run("mercator_roundtrip", 1e-12, [&] {
    double worst = 0;
    for (const double r : {0.5, 1.0, 6371000.0}) {
      for (const double lat : lat85) {
        for (const double lon_deg : {-179.5, -90.0, 0.0, 33.3, 180.0}) {
          const GeoPoint p{lat, deg_to_rad(lon_deg)};
          const GeoPoint back = mercator_inverse(mercator_forward(p, r), r);
          worst = std::max({worst, std::fabs(back.lat - p.lat), std::fabs(back.lon - p.lon)});
        }
      }
    }
    return worst;
  });

  check.run("central_roundtrip", 1e-12, [&] {
    double worst = 0;
    for (const double r : {0.5, 1.0, 6371000.0}) {
      for (const double lat : lat85) {
        for (const double lon_deg : {-179.5, -90.0, 0.0, 33.3, 180.0}) {
          const GeoPoint p{lat, deg_to_rad(lon_deg)};
          const GeoPoint back =
              central_cylindrical_inverse(central_cylindrical_forward(p, r), r);
          worst = std::max({worst, std::fabs(back.lat - p.lat), std::fabs(back.lon - p.lon)});
        }
      }
    }
    return worst;
  });

  check.run("bend_unbend_roundtrip", 1e-12, [&] {
    double worst = 0;
    for (const double a : {0.5, 1.0, 6371.0}) {
      const Catenary c(a);
      for (const double v : detail::linear_grid(-1000, 1000, full ? 20001 : 2001)) {
        const double back = unbend_transform(bend_transform(v, c), c);
        worst = std::max(worst, std::fabs(back - v) / (1 + std::fabs(v)));
      }
    }
    return worst;
  });

  check.run("conformality", 1e-7, [&] {
    double worst = 0;
    for (const double phi : detail::latitude_grid(80, step)) {
      worst = std::max(worst, conformality_residual(phi, 1e-5));
    }
    return worst;
  });

  const std::size_t lox_samples = full ? 2001 : 201;
  const auto sheet = bend_params(deg_to_rad(60), 2);
  const auto straightened = [&](double bearing_deg) {
    const Loxodrome lox{0, deg_to_rad(bearing_deg), deg_to_rad(-60), deg_to_rad(60)};
    std::vector<PlanePoint> bent, mercator;
    for (const auto& g : loxodrome_points(lox, lox_samples)) {
      bent.push_back(bend_map_point(central_cylindrical_forward(g, sheet.radius), sheet));
      mercator.push_back(mercator_forward(g, sheet.radius));
    }
    return std::pair{bent, mercator};
  };

  check.run("loxodrome_straightening", 1e-11, [&] {
    double worst = 0;
    for (const double bearing : {20.0, 45.0, 70.0, 110.0}) {
      worst = std::max(worst, collinearity_residual(straightened(bearing).first));
    }
    return worst;
  });

  check.run("loxodrome_matches_mercator", 1e-12, [&] {
    double worst = 0;
    for (const double bearing : {20.0, 45.0, 70.0, 110.0}) {
      const auto [bent, mercator] = straightened(bearing);
      for (std::size_t i = 0; i < bent.size(); ++i) {
        worst = std::max({worst, std::fabs(bent[i].x - mercator[i].x) / sheet.radius,
                          std::fabs(bent[i].y - mercator[i].y) / sheet.radius});
      }
    }
    return worst;
  });

  check.run("bend_params_reference", 1e-12, [&] {
    // 2 ln(1 + sqrt 2) to 20 digits.
    constexpr double kTwoAsinhOne = 1.7627471740390860505;
    const auto at45 = bend_params(kPi / 4, 2);
    const auto tiny = bend_params(1e-6, 1);
    return std::max({std::fabs(at45.edge_distance - kTwoAsinhOne),
                     std::fabs(at45.radius - 1), std::fabs(tiny.edge_distance - 1)});
  });

  check.run("bend_params_bounds", 0, [&] {
    double violations = 0;
    double previous_ratio = 2;
    for (int k = 1; k < 1000; ++k) {
      const auto spec = bend_params(kHalfPi * k / 1000, 3);
      if (!(spec.edge_distance > 0 && spec.edge_distance < spec.height)) violations += 1;
      const double ratio = spec.edge_distance / spec.height;
      if (!(ratio < previous_ratio)) violations += 1;
      previous_ratio = ratio;
    }
    return violations;
  });

  check.run("edge_consistency", 1e-13, [&] {
    double worst = 0;
    for (int k = 1; k < 90; ++k) {
      const auto spec = bend_params(deg_to_rad(k), 2.5);
      for (const double sign : {-1.0, 1.0}) {
        const auto edge = bend_map_point({0, sign * spec.height / 2}, spec);
        worst = std::max(worst,
                         std::fabs(std::fabs(edge.y) - spec.edge_distance / 2) / spec.edge_distance);
      }
    }
    return worst;
  });

  return report;
}

}  // namespace catbend
