#include <cmath>
#include <limits>

#include "catch_amalgamated.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/oracles.hpp"
#include "catbend/quadrature.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinULP;
using namespace catbend;

namespace {

// 30-digit mpmath references.
constexpr double kAsinhOne = 0.88137358701954302523;
constexpr double kSinh1 = 1.1752011936438014569;
constexpr double kSinh2 = 3.6268604078470187677;
constexpr double kTwoSinh1 = 2.3504023872876029138;
constexpr double kSecIntegral85 = 3.1313013314716450054;
constexpr double kSec45 = 1.4142135623730950488;

double sec(double t) { return 1 / std::cos(t); }

}  // namespace

TEST_CASE("integrate reference integrals") {
  const auto one = integrate([](double) { return 1.0; }, 0, 2, 1e-12);
  CHECK_THAT(one.value, WithinULP(2.0, 1));
  CHECK(one.evaluations >= 15);
  CHECK(one.error_estimate >= 0);

  CHECK_THAT(integrate(sec, 0, kPi / 4, 1e-12).value, WithinAbs(kAsinhOne, 1e-14));
  CHECK_THAT(integrate([](double t) { return std::cosh(t); }, 0, 2, 1e-12).value,
             WithinAbs(kSinh2, 1e-13));
}

TEST_CASE("integrate over an empty interval") {
  const auto r = integrate(sec, 0.3, 0.3, 1e-12);
  CHECK(r.value == 0);
}

TEST_CASE("integrate argument errors") {
  CHECK_THROWS_AS(integrate(sec, 1, 0, 1e-12), DomainError);
  CHECK_THROWS_AS(integrate(sec, 0, 1, 0), DomainError);
  CHECK_THROWS_AS(integrate(sec, 0, 1, -1), DomainError);
  CHECK_THROWS_AS(integrate(sec, 0, std::numeric_limits<double>::infinity(), 1e-9),
                  DomainError);
}

TEST_CASE("integrate reports the offending abscissa") {
  const auto bad = [](double t) {
    return t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : t;
  };
  try {
    integrate(bad, 0, 1, 1e-10);
    FAIL("expected IntegrandError");
  } catch (const IntegrandError& e) {
    CHECK(e.abscissa() > 0.5);
    CHECK(e.abscissa() <= 1);
  }
}

TEST_CASE("integrate gives up on a non-integrable singularity") {
  // 1/x on (0, 1] diverges; panels near zero never converge.
  const auto inv = [](double t) { return 1 / (t + 1e-300); };
  try {
    integrate(inv, 0, 1, 1e-10);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best().evaluations > 15);
    CHECK(e.best().error_estimate > 1e-10);
  }
}

TEST_CASE("integrate is deterministic") {
  const auto a = integrate(sec, 0, 1.45, 1e-13);
  const auto b = integrate(sec, 0, 1.45, 1e-13);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("error estimates are honest within a factor of ten") {
  SECTION("secant") {
    for (int deg = 5; deg <= 85; deg += 5) {
      const double phi = deg_to_rad(deg);
      const auto r = integrate(sec, 0, phi, 1e-13);
      CHECK(std::fabs(r.value - std::asinh(std::tan(phi))) <= 10 * r.error_estimate);
    }
  }
  SECTION("cosh") {
    for (const double x : {0.25, 1.0, 2.0, 3.0}) {
      const auto r = integrate([](double t) { return std::cosh(t); }, 0, x, 1e-13);
      CHECK(std::fabs(r.value - std::sinh(x)) <= 10 * r.error_estimate);
    }
  }
  SECTION("polynomials up to degree six") {
    const int degree = GENERATE(range(0, 7));
    const auto p = [degree](double t) { return std::pow(t, degree) - 0.5 * t; };
    const auto r = integrate(p, -1, 2, 1e-13);
    const double exact = (std::pow(2.0, degree + 1) - std::pow(-1.0, degree + 1)) / (degree + 1) -
                         0.25 * (4 - 1);
    CHECK(std::fabs(r.value - exact) <= 10 * r.error_estimate);
  }
}

TEST_CASE("integration is additive over intervals") {
  const double a = 0, b = 0.7, c = 1.4;
  const double tol = 1e-12;
  const double whole = integrate(sec, a, c, tol).value;
  const double split = integrate(sec, a, b, tol).value + integrate(sec, b, c, tol).value;
  CHECK(std::fabs(whole - split) <= 3 * tol);
}

TEST_CASE("secant_integral_oracle") {
  CHECK(secant_integral_oracle(0) == 0);
  CHECK_THAT(secant_integral_oracle(kPi / 4), WithinAbs(kAsinhOne, 1e-13));
  CHECK_THAT(secant_integral_oracle(deg_to_rad(85)), WithinAbs(kSecIntegral85, 1e-12));
  CHECK_THROWS_AS(secant_integral_oracle(kHalfPi), PoleError);
}

TEST_CASE("secant_integral_oracle is odd") {
  const double tol = 1e-12;
  const double phi = GENERATE(take(50, random(0.0, 1.5)));
  CHECK(std::fabs(secant_integral_oracle(-phi, tol) + secant_integral_oracle(phi, tol)) <=
        2 * tol);
}

TEST_CASE("arc_length_oracle") {
  CHECK(arc_length_oracle(Catenary(1), 0) == 0);
  CHECK_THAT(arc_length_oracle(Catenary(1), 1), WithinAbs(kSinh1, 1e-13));
  CHECK_THAT(arc_length_oracle(Catenary(2), 2), WithinAbs(kTwoSinh1, 1e-13));
  CHECK_THAT(arc_length_oracle(Catenary(2), -2), WithinAbs(-kTwoSinh1, 1e-13));
}

TEST_CASE("central_difference") {
  CHECK_THAT(central_difference([](double x) { return x; }, 5, 1e-3), WithinAbs(1.0, 1e-12));
  CHECK_THAT(central_difference([](double x) { return std::cosh(x); }, 1, 1e-5),
             WithinAbs(kSinh1, 1e-9));
  CHECK_THAT(central_difference([](double x) { return gd_inverse(x); }, kPi / 4, 1e-5),
             WithinAbs(kSec45, 1e-8));
}

TEST_CASE("central_difference argument errors") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(central_difference(f, 0, 0), DomainError);
  CHECK_THROWS_AS(central_difference(f, 0, -1e-5), DomainError);
  CHECK_THROWS_AS(central_difference([](double x) { return std::log(x); }, 0, 1e-5),
                  DomainError);
}
