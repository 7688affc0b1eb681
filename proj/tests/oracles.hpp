#pragma once

// Brute-force reference computations for the test suites. Nothing here calls
// into the library's quadrature or geometry code.

#include <cmath>
#include <cstddef>
#include <numbers>

namespace arcplate::oracle {

inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kC = 299792458.0;
inline constexpr double kPi = std::numbers::pi;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Composite midpoint rule with Kahan-compensated summation.
template <class F>
double midpoint(F&& f, double a, double b, std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double term = f(a + (static_cast<double>(i) + 0.5) * h) - carry;
    const double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return sum * h;
}

/// Arc-plate energy per unit depth written straight from the closed-form
/// separation x = g - R + sqrt(R^2 - y^2), integrated by 10^6 midpoint panels.
inline double arc_energy_midpoint(double radius, double half_span, double gap, double weight,
                                  std::size_t panels = 1'000'000) {
  auto integrand = [=](double y) {
    const double root = std::sqrt(radius * radius - y * y);
    const double psi = gap - radius + root;
    const double dpsi = -y / root;
    return (1.0 + weight * 2.0 / 3.0 * dpsi * dpsi) / (psi * psi * psi);
  };
  return -kPi * kPi * kHbar * kC / 1440.0 * midpoint(integrand, -half_span, half_span, panels);
}

/// Bisection for the root of a monotone function on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace arcplate::oracle
