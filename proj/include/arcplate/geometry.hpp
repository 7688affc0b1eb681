#pragma once

// Circular-arc membrane facing a flat plate.
//
// The arc bulges away from the plate: the gap is largest on the symmetry
// axis (y = 0) and shrinks by the local sagitta toward the clamped ends,
//
//   psi(y) = g - (R - sqrt(R^2 - y^2)),   |y| <= y_max.
//
// All lengths are SI metres.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "arcplate/error.hpp"
#include "arcplate/numerics.hpp"

namespace arcplate::geometry {

/// Ratio g/R above which the proximity approximation is flagged.
inline constexpr double kPfaWarnRatio = 0.05;
/// Ratio g/R at or above which the proximity approximation is rejected.
inline constexpr double kPfaFailRatio = 0.5;

/// Height of a circular arc of radius R over a half-chord y.
/// Written as y^2 / (R + sqrt(R^2 - y^2)) so that R >> y does not cancel.
inline double sagitta(double radius, double half_chord) {
  const double y2 = half_chord * half_chord;
  return y2 / (radius + std::sqrt(radius * radius - y2));
}

class ArcGeometry {
 public:
  /// Checks R > 0, 0 < y_max < R, g > 0 and g/R < 1. Contact with the plate
  /// (g <= sagitta) is reported by validate_pfa and rejected by every
  /// operation that evaluates the separation.
  ArcGeometry(double radius_m, double half_span_m, double center_gap_m)
      : radius_(radius_m), half_span_(half_span_m), gap_(center_gap_m) {
    if (!(std::isfinite(radius_) && radius_ > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "arc radius must be positive and finite");
    }
    if (!(std::isfinite(half_span_) && half_span_ > 0.0 && half_span_ < radius_)) {
      throw Error(ErrorCode::InvalidArgument, "arc half-span must satisfy 0 < y_max < R");
    }
    if (!(std::isfinite(gap_) && gap_ > 0.0)) {
      throw Error(ErrorCode::NonPositiveGap, "center gap must be positive and finite");
    }
    if (gap_ / radius_ >= 1.0) {
      throw Error(ErrorCode::PfaViolation, "center gap must be smaller than the arc radius");
    }
  }

  double radius() const noexcept { return radius_; }
  double half_span() const noexcept { return half_span_; }
  double center_gap() const noexcept { return gap_; }

  ArcGeometry with_gap(double center_gap_m) const {
    return ArcGeometry(radius_, half_span_, center_gap_m);
  }

  /// Sagitta at the arc ends.
  double edge_sagitta() const { return sagitta(radius_, half_span_); }
  /// Separation left at the arc ends; positive iff the arc clears the plate.
  double contact_margin() const { return gap_ - edge_sagitta(); }

  void require_clearance() const {
    if (!(contact_margin() > 0.0)) {
      std::ostringstream os;
      os.precision(6);
      os << "arc touches the plate: center gap " << gap_ << " m does not exceed edge sagitta "
         << edge_sagitta() << " m";
      throw Error(ErrorCode::ContactViolation, os.str());
    }
  }

 private:
  double radius_;
  double half_span_;
  double gap_;
};

namespace detail {
inline void require_in_span(const ArcGeometry& geom, double y) {
  if (!(std::abs(y) <= geom.half_span())) {
    std::ostringstream os;
    os.precision(6);
    os << "position y = " << y << " m lies outside the arc span +/-" << geom.half_span() << " m";
    throw Error(ErrorCode::OutOfSpan, os.str());
  }
}
}  // namespace detail

/// Local arc-plate separation psi(y).
inline double separation(const ArcGeometry& geom, double y) {
  detail::require_in_span(geom, y);
  const double psi = geom.center_gap() - sagitta(geom.radius(), y);
  if (!(psi > 0.0)) {
    throw Error(ErrorCode::ContactViolation, "separation is non-positive: arc touches the plate");
  }
  return psi;
}

/// d psi / d y = -y / sqrt(R^2 - y^2).
inline double slope(const ArcGeometry& geom, double y) {
  detail::require_in_span(geom, y);
  const double r = geom.radius();
  return -y / std::sqrt(r * r - y * y);
}

inline double arc_length_closed_form(const ArcGeometry& geom) {
  return 2.0 * geom.radius() * std::asin(geom.half_span() / geom.radius());
}

/// Arc length by quadrature of sqrt(1 + (dx/dy)^2) over the span.
inline double arc_length(const ArcGeometry& geom, const numerics::QuadratureSpec& spec = {}) {
  const double r2 = geom.radius() * geom.radius();
  auto integrand = [r2](double y) {
    const double dxdy = y / std::sqrt(r2 - y * y);
    return std::sqrt(1.0 + dxdy * dxdy);
  };
  return numerics::integrate(integrand, -geom.half_span(), geom.half_span(), spec).value;
}

enum class Status { Pass, Warn, Fail };

constexpr std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Warn: return "warn";
    case Status::Fail: return "fail";
  }
  return "fail";
}

struct PfaReport {
  double ratio = 0.0;           ///< g / R
  Status status = Status::Pass; ///< from ratio alone
  double contact_margin = 0.0;  ///< g - sagitta(y_max), metres
  bool clears_plate() const { return contact_margin > 0.0; }
  bool ok() const { return status != Status::Fail && clears_plate(); }
};

/// Validity of the proximity approximation for raw arc parameters. Never
/// throws; degenerate inputs are reported as Fail.
inline PfaReport validate_pfa(double radius_m, double half_span_m, double center_gap_m) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  PfaReport report;
  if (!(radius_m > 0.0) || !(half_span_m >= 0.0) || !(half_span_m < radius_m) ||
      !(center_gap_m > 0.0)) {
    report.ratio = radius_m > 0.0 ? center_gap_m / radius_m : kInf;
    report.status = Status::Fail;
    report.contact_margin = -kInf;
    return report;
  }
  report.ratio = center_gap_m / radius_m;
  report.contact_margin = center_gap_m - sagitta(radius_m, half_span_m);
  if (report.ratio >= kPfaFailRatio) {
    report.status = Status::Fail;
  } else if (report.ratio > kPfaWarnRatio) {
    report.status = Status::Warn;
  }
  return report;
}

inline PfaReport validate_pfa(const ArcGeometry& geom) {
  return validate_pfa(geom.radius(), geom.half_span(), geom.center_gap());
}

}  // namespace arcplate::geometry
