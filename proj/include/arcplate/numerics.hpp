#pragma once

// One-dimensional quadrature used by every energy and length integral.
//
// Two methods are provided. Adaptive Simpson is the default: the interval is
// first covered by eight Simpson segments, whose composite sum sets the
// absolute error target, then each segment is bisected until the Richardson
// difference |S_left + S_right - S_whole| drops below 15x its share of the
// target. Fixed-order Gauss-Legendre is kept as an independent cross-check;
// its error estimate is the difference between the one-panel and the
// two-panel rule of the same order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "arcplate/error.hpp"

namespace arcplate::numerics {

struct AdaptiveSimpson {};

struct GaussLegendre {
  int order = 64;
};

using QuadratureMethod = std::variant<AdaptiveSimpson, GaussLegendre>;

struct QuadratureSpec {
  QuadratureMethod method = AdaptiveSimpson{};
  double relative_tolerance = 1e-10;
  double absolute_tolerance = 0.0;
  /// Maximum bisection depth for adaptive Simpson.
  int max_subdivisions = 60;

  static QuadratureSpec gauss_legendre(int order) {
    QuadratureSpec spec;
    spec.method = GaussLegendre{order};
    return spec;
  }

  bool is_adaptive() const { return std::holds_alternative<AdaptiveSimpson>(method); }

  void validate() const {
    if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "relative tolerance must lie in (0, 1)");
    }
    if (!(absolute_tolerance >= 0.0) || !std::isfinite(absolute_tolerance)) {
      throw Error(ErrorCode::InvalidArgument, "absolute tolerance must be finite and >= 0");
    }
    if (max_subdivisions < 1) {
      throw Error(ErrorCode::InvalidArgument, "max subdivisions must be >= 1");
    }
    if (const auto* gl = std::get_if<GaussLegendre>(&method); gl && gl->order < 2) {
      throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be >= 2");
    }
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    if (is_adaptive()) {
      os << "adaptive-simpson";
    } else {
      os << "gauss-legendre(order=" << std::get<GaussLegendre>(method).order << ")";
    }
    os << " rel_tol=" << relative_tolerance << " abs_tol=" << absolute_tolerance
       << " max_subdivisions=" << max_subdivisions;
    return os.str();
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// ascending in abscissa.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre_rule(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Gauss-Legendre order must be positive");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    // Refresh the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace detail {

template <class F>
class CountingEval {
 public:
  explicit CountingEval(F& f) : f_(f) {}

  double operator()(double x) {
    ++count;
    const double v = static_cast<double>(f_(x));
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is not finite at x = " << x;
      throw Error(ErrorCode::NonFiniteIntegrand, os.str());
    }
    return v;
  }

  std::size_t count = 0;

 private:
  F& f_;
};

template <class Eval>
struct SimpsonState {
  Eval& eval;
  int max_depth;
  double value = 0.0;
  double error = 0.0;

  void refine(double a, double b, double fa, double fm, double fb, double whole,
              double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double h = b - a;
    const double fd = eval(0.5 * (a + m));
    const double fe = eval(0.5 * (m + b));
    const double left = h / 12.0 * (fa + 4.0 * fd + fm);
    const double right = h / 12.0 * (fm + 4.0 * fe + fb);
    const double diff = left + right - whole;
    const double magnitude =
        h / 12.0 * (std::abs(fa) + 4.0 * std::abs(fd) + 2.0 * std::abs(fm) +
                    4.0 * std::abs(fe) + std::abs(fb));
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (std::abs(diff) <= 15.0 * tol || std::abs(diff) <= roundoff) {
      value += left + right + diff / 15.0;
      error += std::abs(diff) / 15.0;
      return;
    }
    if (depth >= max_depth) {
      std::ostringstream os;
      os.precision(6);
      os << "adaptive Simpson exhausted " << max_depth << " subdivision levels on ["
         << a << ", " << b << "] (difference " << diff << ", target " << 15.0 * tol << ")";
      throw Error(ErrorCode::NonConvergence, os.str());
    }
    refine(a, m, fa, fd, fm, left, 0.5 * tol, depth + 1);
    refine(m, b, fm, fe, fb, right, 0.5 * tol, depth + 1);
  }
};

template <class Eval>
QuadratureResult adaptive_simpson(Eval& eval, double lower, double upper,
                                  const QuadratureSpec& spec) {
  constexpr int kSegments = 8;
  const double width = upper - lower;
  const double h = width / (2 * kSegments);
  std::vector<double> x(2 * kSegments + 1);
  std::vector<double> fx(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = (i + 1 == x.size()) ? upper : lower + static_cast<double>(i) * h;
    fx[i] = eval(x[i]);
  }
  std::vector<double> whole(kSegments);
  double estimate = 0.0;
  for (std::size_t s = 0; s < kSegments; ++s) {
    const std::size_t i = 2 * s;
    whole[s] = (x[i + 2] - x[i]) / 6.0 * (fx[i] + 4.0 * fx[i + 1] + fx[i + 2]);
    estimate += whole[s];
  }
  const double target =
      std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(estimate));

  SimpsonState<Eval> state{eval, spec.max_subdivisions};
  for (std::size_t s = 0; s < kSegments; ++s) {
    const std::size_t i = 2 * s;
    const double share = target * (x[i + 2] - x[i]) / width;
    state.refine(x[i], x[i + 2], fx[i], fx[i + 1], fx[i + 2], whole[s], share, 1);
  }
  return {state.value, state.error, eval.count};
}

template <class Eval>
double gauss_panel(Eval& eval, const GaussRule& rule, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k] * eval(mid + half * rule.nodes[k]);
  }
  return half * sum;
}

template <class Eval>
QuadratureResult gauss_legendre(Eval& eval, double lower, double upper, int order) {
  const GaussRule rule = gauss_legendre_rule(order);
  const double coarse = gauss_panel(eval, rule, lower, upper);
  const double mid = 0.5 * (lower + upper);
  const double fine = gauss_panel(eval, rule, lower, mid) + gauss_panel(eval, rule, mid, upper);
  return {fine, std::abs(fine - coarse), eval.count};
}

}  // namespace detail

/// Integrates f over [lower, upper].
///
/// Throws InvalidInterval for reversed or non-finite bounds, NonConvergence
/// when adaptive refinement runs past spec.max_subdivisions, and
/// NonFiniteIntegrand if f returns inf/nan anywhere it is sampled.
template <class F>
QuadratureResult integrate(F&& f, double lower, double upper, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw Error(ErrorCode::InvalidInterval, "integration bounds must be finite");
  }
  if (lower > upper) {
    throw Error(ErrorCode::InvalidInterval, "lower integration bound exceeds upper bound");
  }
  detail::CountingEval<std::remove_reference_t<F>> eval(f);
  if (lower == upper) {
    eval(lower);
    return {0.0, 0.0, eval.count};
  }
  if (spec.is_adaptive()) return detail::adaptive_simpson(eval, lower, upper, spec);
  return detail::gauss_legendre(eval, lower, upper, std::get<GaussLegendre>(spec.method).order);
}

}  // namespace arcplate::numerics
