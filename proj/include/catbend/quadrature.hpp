#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature and central differences.
// These are the independent numerical routes used to check closed forms, so
// nothing here may depend on the Gudermannian or catenary formulas.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "catbend/errors.hpp"

namespace catbend {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t evaluations = 0;
};

/// Integrand returned NaN or infinity.
class IntegrandError : public Error {
 public:
  explicit IntegrandError(double x)
      : Error("integrand is not finite at x = " + std::to_string(x)),
        abscissa_(x) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Subdivision or evaluation cap reached before the tolerance was met.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(QuadratureResult best)
      : Error("adaptive quadrature did not converge; best estimate " +
              std::to_string(best.value) + " +/- " +
              std::to_string(best.error_estimate)),
        best_(best) {}

  const QuadratureResult& best() const noexcept { return best_; }

 private:
  QuadratureResult best_;
};

inline constexpr int kMaxSubdivisionDepth = 60;
inline constexpr std::size_t kMaxEvaluations = 1'000'000;

namespace detail {

// Kronrod abscissae in decreasing order; odd indices (and the centre) are the
// embedded Gauss points.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  int depth;
  bool at_roundoff;  // error is the rounding floor, bisection cannot help
};

struct LargerError {
  bool operator()(const Segment& a, const Segment& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.lo > b.lo;  // deterministic tie-break
  }
};

template <class F>
double sample(const F& f, double x) {
  const double y = static_cast<double>(f(x));
  if (!std::isfinite(y)) throw IntegrandError(x);
  return y;
}

// One 15-point Kronrod panel with the QUADPACK error heuristic.
template <class F>
Segment kronrod_panel(const F& f, double lo, double hi, int depth) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();

  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  std::array<double, 7> left{};
  std::array<double, 7> right{};
  const double fc = sample(f, centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::fabs(kronrod);
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    left[j] = sample(f, centre - dx);
    right[j] = sample(f, centre + dx);
    const double pair = left[j] + right[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::fabs(left[j]) + std::fabs(right[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }

  const double mean = 0.5 * kronrod;
  double dev_sum = kKronrodWeights[7] * std::fabs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    dev_sum += kKronrodWeights[j] *
               (std::fabs(left[j] - mean) + std::fabs(right[j] - mean));
  }

  const double value = kronrod * half;
  const double res_abs = abs_sum * std::fabs(half);
  const double res_asc = dev_sum * std::fabs(half);
  double error = std::fabs((kronrod - gauss) * half);
  if (res_asc != 0 && error != 0) {
    error = res_asc * std::min(1.0, std::pow(200 * error / res_asc, 1.5));
  }
  bool at_roundoff = false;
  if (res_abs > tiny / (50 * eps) && 50 * eps * res_abs >= error) {
    error = 50 * eps * res_abs;
    at_roundoff = true;
  }
  return {lo, hi, value, error, depth, at_roundoff};
}

}  // namespace detail

/// Integrates f over [lo, hi] until the summed panel error estimate is at
/// most tol, or until the worst panel is already at double-precision rounding
/// level (the returned estimate then exceeds tol). Panels are bisected
/// worst-first. Throws ConvergenceError after
/// kMaxSubdivisionDepth levels or kMaxEvaluations samples.
template <class F>
QuadratureResult integrate(const F& f, double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw DomainError("integration bounds must be finite with lo <= hi");
  }
  if (!(tol > 0)) throw DomainError("quadrature tolerance must be positive");

  std::priority_queue<detail::Segment, std::vector<detail::Segment>,
                      detail::LargerError>
      work;
  std::size_t evaluations = 15;
  work.push(detail::kronrod_panel(f, lo, hi, 0));
  double total_error = work.top().error;

  auto summarize = [&] {
    std::vector<detail::Segment> all;
    all.reserve(work.size());
    for (auto copy = work; !copy.empty(); copy.pop()) all.push_back(copy.top());
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.lo < b.lo; });
    // Neumaier summation, in abscissa order so results are reproducible.
    double sum = 0, carry = 0, err = 0;
    for (const auto& s : all) {
      const double t = sum + s.value;
      carry += std::fabs(sum) >= std::fabs(s.value) ? (sum - t) + s.value
                                                    : (s.value - t) + sum;
      sum = t;
      err += s.error;
    }
    return QuadratureResult{sum + carry, err, evaluations};
  };

  while (total_error > tol) {
    const detail::Segment worst = work.top();
    if (worst.at_roundoff) break;
    if (worst.depth >= kMaxSubdivisionDepth ||
        evaluations + 30 > kMaxEvaluations) {
      throw ConvergenceError(summarize());
    }
    work.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const auto a = detail::kronrod_panel(f, worst.lo, mid, worst.depth + 1);
    const auto b = detail::kronrod_panel(f, mid, worst.hi, worst.depth + 1);
    evaluations += 30;
    total_error += a.error + b.error - worst.error;
    work.push(a);
    work.push(b);
    // The running total accumulates cancellation; confirm before stopping.
    if (total_error <= tol) {
      total_error = 0;
      for (auto copy = work; !copy.empty(); copy.pop()) {
        total_error += copy.top().error;
      }
    }
  }
  return summarize();
}

inline constexpr double kDefaultDerivativeStep = 1e-5;

/// Symmetric difference (f(x+h) - f(x-h)) / 2h.
template <class F>
double central_difference(const F& f, double x, double h = kDefaultDerivativeStep) {
  if (!std::isfinite(x)) throw DomainError("abscissa must be finite");
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("step h must be positive");
  const double up = static_cast<double>(f(x + h));
  const double down = static_cast<double>(f(x - h));
  if (!std::isfinite(up) || !std::isfinite(down)) {
    throw DomainError("function is not finite at x +/- h");
  }
  return (up - down) / (2 * h);
}

}  // namespace catbend
