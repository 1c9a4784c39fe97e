#include <cmath>
#include <limits>
#include <vector>

#include "catch_amalgamated.hpp"
#include "catbend/catenary.hpp"
#include "catbend/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Catch::Matchers::WithinULP;
using namespace catbend;

namespace {

// 30-digit mpmath references.
constexpr double kAsinhOne = 0.88137358701954302523;
constexpr double kAsinhSqrt3 = 1.3169578969248167086;
constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kTwoSinh1 = 2.3504023872876029138;
constexpr double kFiveAsinh2 = 7.2181773758940517125;
constexpr double kTwoAsinhOne = 1.7627471740390860505;
constexpr double kRadius60 = 0.28867513459481288225;  // 1 / (2 sqrt 3)
constexpr double kEdge60 = 0.76034599630094634753;    // asinh(sqrt 3) / sqrt 3
constexpr double kAsinhTan30 = 0.54930614433405484570;

}  // namespace

TEST_CASE("Catenary rejects non-positive scale") {
  CHECK_THROWS_AS(Catenary(0), DomainError);
  CHECK_THROWS_AS(Catenary(-1), DomainError);
  CHECK_THROWS_AS(Catenary(std::numeric_limits<double>::infinity()), DomainError);
  CHECK(Catenary(2).height(0) == 2);
}

TEST_CASE("catenary_arc_length") {
  const Catenary unit(1);
  CHECK(catenary_arc_length(unit, 0) == 0);
  CHECK_THAT(catenary_arc_length(unit, kAsinhOne), WithinAbs(1, 1e-15));
  CHECK_THAT(catenary_arc_length(Catenary(2), 2), WithinAbs(kTwoSinh1, 1e-14));
  CHECK_THAT(catenary_arc_length(Catenary(2), 2),
             WithinAbs(arc_length_oracle(Catenary(2), 2), 1e-12));
  CHECK_THROWS_AS(catenary_arc_length(unit, std::numeric_limits<double>::quiet_NaN()),
                  DomainError);
}

TEST_CASE("catenary_arc_length_inverse") {
  const Catenary unit(1);
  CHECK(catenary_arc_length_inverse(unit, 0) == 0);
  CHECK_THAT(catenary_arc_length_inverse(unit, 1), WithinAbs(kAsinhOne, 1e-15));
  CHECK_THAT(catenary_arc_length_inverse(unit, std::sqrt(3.0)), WithinAbs(kAsinhSqrt3, 1e-15));
  CHECK_THROWS_AS(catenary_arc_length_inverse(unit, std::numeric_limits<double>::infinity()),
                  DomainError);
}

TEST_CASE("arc length is odd and inverts") {
  const double a = GENERATE(0.5, 1.0, 7.0);
  const double s = GENERATE(take(100, random(-50.0, 50.0)));
  const Catenary c(a);
  CHECK(catenary_arc_length(c, -s) == -catenary_arc_length(c, s));
  CHECK(catenary_arc_length_inverse(c, -s) == -catenary_arc_length_inverse(c, s));
  CHECK_THAT(catenary_arc_length(c, catenary_arc_length_inverse(c, s)),
             WithinAbs(s, 4 * std::numeric_limits<double>::epsilon() * (1 + std::fabs(s))));
}

TEST_CASE("arc length matches quadrature of the arc element") {
  for (const double a : {0.5, 1.0, 2.0}) {
    const Catenary c(a);
    for (int k = 0; k <= 300; ++k) {
      const double x = 0.01 * k;
      REQUIRE(std::fabs(catenary_arc_length(c, x) - arc_length_oracle(c, x)) < 1e-10);
    }
  }
}

TEST_CASE("bend_transform examples") {
  const Catenary unit(1);
  CHECK(bend_transform(0, unit) == 0);
  CHECK_THAT(bend_transform(1, unit), WithinAbs(kAsinhOne, 1e-15));
  CHECK_THAT(bend_transform(1, unit), WithinAbs(secant_integral_oracle(kPi / 4), 1e-13));
  CHECK_THAT(bend_transform(kSqrt3, unit), WithinAbs(kAsinhSqrt3, 1e-15));
  CHECK_THAT(bend_transform(kSqrt3, unit), WithinAbs(gd_inverse(kPi / 3), 1e-15));
}

TEST_CASE("unbend_transform examples") {
  CHECK(unbend_transform(0, Catenary(1)) == 0);
  CHECK_THAT(unbend_transform(kAsinhOne, Catenary(1)), WithinAbs(1, 1e-15));
  CHECK_THAT(unbend_transform(kFiveAsinh2, Catenary(5)), WithinAbs(10, 1e-14));
}

TEST_CASE("bending the central cylindrical ordinate gives the Mercator ordinate") {
  const double a = GENERATE(0.5, 1.0, 6371.0);
  const Catenary c(a);
  for (int k = -850; k <= 850; ++k) {
    const double phi = deg_to_rad(0.1 * k);
    const double psi = gd_inverse(phi);
    REQUIRE(std::fabs(bend_transform(a * std::tan(phi), c) - a * psi) <
            1e-12 * a * (1 + std::fabs(psi)));
  }
}

TEST_CASE("bend/unbend round trip") {
  const double a = GENERATE(0.5, 1.0, 6371.0);
  const double v = GENERATE(take(300, random(-1000.0, 1000.0)));
  const Catenary c(a);
  CHECK(std::fabs(unbend_transform(bend_transform(v, c), c) - v) < 1e-12 * (1 + std::fabs(v)));
}

TEST_CASE("bend_transform scale covariance") {
  const double v = GENERATE(take(200, random(-100.0, 100.0)));
  const double a = GENERATE(0.5, 1.0, 3.0);
  const double k = GENERATE(2.0, 0.125, 64.0);
  CHECK_THAT(bend_transform(k * v, Catenary(k * a)),
             WithinULP(k * bend_transform(v, Catenary(a)), 2));
}

TEST_CASE("bend_params examples") {
  const auto s45 = bend_params(kPi / 4, 2);
  CHECK_THAT(s45.radius, WithinULP(1.0, 1));
  CHECK_THAT(s45.edge_distance, WithinAbs(kTwoAsinhOne, 1e-12));
  CHECK_THAT(s45.psi_max(), WithinAbs(kAsinhOne, 1e-15));

  const auto s60 = bend_params(kPi / 3, 1);
  CHECK_THAT(s60.radius, WithinRel(kRadius60, 1e-15));
  CHECK_THAT(s60.edge_distance, WithinRel(kEdge60, 1e-15));

  CHECK_THAT(bend_params(1e-6, 1).edge_distance, WithinAbs(1, 1e-12));
}

TEST_CASE("bend_params errors") {
  CHECK_THROWS_AS(bend_params(0, 1), DomainError);
  CHECK_THROWS_AS(bend_params(-0.1, 1), DomainError);
  CHECK_THROWS_AS(bend_params(kHalfPi, 1), DomainError);
  CHECK_THROWS_AS(bend_params(0.5, 0), DomainError);
  CHECK_THROWS_AS(bend_params(0.5, -2), DomainError);
  CHECK_THROWS_AS(bend_params(std::numeric_limits<double>::quiet_NaN(), 1), DomainError);
}

TEST_CASE("series and direct asinh ratio agree at the crossover") {
  const double t = kSeriesThreshold;
  const double direct = std::asinh(t) / t;
  CHECK(std::fabs(asinh_ratio(t * (1 - 1e-12)) - direct) < 1e-14);
  CHECK(std::fabs(asinh_ratio(t) - direct) < 1e-14);
  CHECK(asinh_ratio(1e-300) == 1);
}

TEST_CASE("BendSpec invariants") {
  double previous = 2;
  for (int k = 1; k < 1000; ++k) {
    const auto spec = bend_params(kHalfPi * k / 1000, 4);
    REQUIRE(spec.radius == 4 / (2 * std::tan(spec.alpha)));
    REQUIRE(std::fabs(spec.edge_distance - 4 / std::tan(spec.alpha) * std::asinh(std::tan(spec.alpha))) <
            1e-13 * 4);
    REQUIRE(spec.edge_distance > 0);
    REQUIRE(spec.edge_distance < spec.height);
    const double ratio = spec.edge_distance / spec.height;
    REQUIRE(ratio < previous);
    previous = ratio;
  }
}

TEST_CASE("bend_map_point examples") {
  const auto spec = bend_params(kPi / 4, 2);
  CHECK(bend_map_point({0.3, 0}, spec) == PlanePoint{0.3, 0});
  const auto edge = bend_map_point({0, 1}, spec);
  CHECK(edge.x == 0);
  CHECK_THAT(edge.y, WithinAbs(kAsinhOne, 1e-15));
  CHECK_THAT(edge.y, WithinAbs(spec.edge_distance / 2, 1e-15));

  const auto mid = bend_map_point({0.25, std::tan(kPi / 6) * spec.radius}, spec);
  CHECK(mid.x == 0.25);
  CHECK_THAT(mid.y, WithinAbs(kAsinhTan30 * spec.radius, 1e-15));
}

TEST_CASE("bend_map_point rejects points off the sheet") {
  const auto spec = bend_params(kPi / 4, 2);
  CHECK_THROWS_AS(bend_map_point({0, 1.001}, spec), OutOfMapError);
  CHECK_THROWS_AS(bend_map_point({0, -1.5}, spec), OutOfMapError);
  CHECK_THROWS_AS(unbend_map_point({0, spec.edge_distance}, spec), OutOfMapError);
}

TEST_CASE("edges land at half the edge distance") {
  for (int k = 1; k < 90; ++k) {
    const auto spec = bend_params(deg_to_rad(k), 3.5);
    for (const double sign : {-1.0, 1.0}) {
      const auto e = bend_map_point({1, sign * spec.height / 2}, spec);
      REQUIRE(std::fabs(std::fabs(e.y) - spec.edge_distance / 2) <= 1e-13 * spec.edge_distance);
    }
  }
}

TEST_CASE("bend and unbend map points are inverse") {
  const auto spec = bend_params(deg_to_rad(70), 5);
  const double y = GENERATE(take(200, random(-2.5, 2.5)));
  const auto back = unbend_map_point(bend_map_point({1.5, y}, spec), spec);
  CHECK(back.x == 1.5);
  CHECK_THAT(back.y, WithinAbs(y, 1e-12 * (1 + std::fabs(y))));
}

TEST_CASE("bent loxodromes are straight and coincide with scaled Mercator") {
  const double alpha_deg = GENERATE(30.0, 60.0, 80.0);
  const auto spec = bend_params(deg_to_rad(alpha_deg), 1.7);
  const double bearing = GENERATE(take(8, random(0.02, 3.12)));
  if (std::fabs(bearing - kHalfPi) < 0.02) return;
  const double alpha = spec.alpha;
  const Loxodrome lox{0.4, bearing, -alpha, alpha};

  std::vector<PlanePoint> bent;
  for (const auto& g : loxodrome_points(lox, 2001)) {
    const auto p = bend_map_point(central_cylindrical_forward(g, spec.radius), spec);
    const auto m = mercator_forward(g, spec.radius);
    REQUIRE(std::fabs(p.x - m.x) <= 1e-12 * spec.radius);
    REQUIRE(std::fabs(p.y - m.y) <= 1e-12 * spec.radius);
    bent.push_back(p);
  }
  CHECK(collinearity_residual(bent) < 1e-11);
}
