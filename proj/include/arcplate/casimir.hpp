#pragma once

// Casimir energy primitives for perfect conductors.
//
// The arc-plate energy is evaluated per unit depth (J/m) with the
// derivative-expansion integrand
//
//   U = -(pi^2 hbar c / 1440) * Int_{-y_max}^{y_max} [1 + k (2/3) psi'(y)^2] / psi(y)^3 dy
//
// where the gradient weight k is 0 for the proximity-force approximation,
// 1 for the next-to-leading-order expansion and epsilon in [0, 1] for the
// scaled variant.

#include <cmath>
#include <sstream>
#include <string>

#include "arcplate/constants.hpp"
#include "arcplate/error.hpp"
#include "arcplate/geometry.hpp"
#include "arcplate/numerics.hpp"

namespace arcplate::casimir {

class EnergyModel {
 public:
  enum class Kind { Pfa, Ntlo, ScaledNtlo };

  static EnergyModel pfa() { return EnergyModel(Kind::Pfa, 0.0); }
  static EnergyModel ntlo() { return EnergyModel(Kind::Ntlo, 1.0); }
  static EnergyModel scaled_ntlo(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "scaled NTLO epsilon must lie in [0, 1]");
    }
    return EnergyModel(Kind::ScaledNtlo, epsilon);
  }

  Kind kind() const noexcept { return kind_; }
  /// Multiplier applied to the (2/3) psi'^2 gradient term.
  double gradient_weight() const noexcept { return weight_; }

  /// Short identifier used in CSV column names and on the command line:
  /// "pfa", "ntlo", or "scaled<eps>".
  std::string label() const {
    switch (kind_) {
      case Kind::Pfa: return "pfa";
      case Kind::Ntlo: return "ntlo";
      case Kind::ScaledNtlo: {
        std::ostringstream os;
        os << "scaled" << weight_;
        return os.str();
      }
    }
    return "unknown";
  }

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;

 private:
  EnergyModel(Kind kind, double weight) : kind_(kind), weight_(weight) {}

  Kind kind_;
  double weight_;
};

struct LineEnergy {
  double value = 0.0;  ///< J/m, negative (attractive)
  EnergyModel model = EnergyModel::ntlo();
  double quadrature_error = 0.0;  ///< J/m
};

namespace detail {
inline void require_positive_gap(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw Error(ErrorCode::NonPositiveGap, "separation must be positive and finite");
  }
}

inline void require_sphere_pfa(double radius, double d) {
  require_positive_gap(d);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "sphere radius must be positive and finite");
  }
  if (d / radius >= 1.0) {
    throw Error(ErrorCode::PfaViolation, "sphere-plate formula requires d/R < 1");
  }
}
}  // namespace detail

/// Pressure between ideal parallel plates, -pi^2 hbar c / (240 d^4), Pa.
inline double parallel_plate_pressure(double d) {
  detail::require_positive_gap(d);
  constexpr double k = PhysicalConstants::pi * PhysicalConstants::pi * PhysicalConstants::hbar_c / 240.0;
  return -k / (d * d * d * d);
}

/// Parallel-plate energy per area with the -pi hbar c / (720 d^3) prefactor.
/// Kept for reference only; the arc integrals use the pi^2/1440 prefactor.
inline double parallel_plate_energy_density(double d) {
  detail::require_positive_gap(d);
  constexpr double k = PhysicalConstants::pi * PhysicalConstants::hbar_c / 720.0;
  return -k / (d * d * d);
}

/// Sphere-plate force in the proximity approximation, N.
inline double sphere_plate_force(double radius, double d) {
  detail::require_sphere_pfa(radius, d);
  constexpr double k = PhysicalConstants::pi * PhysicalConstants::pi * PhysicalConstants::pi *
                       PhysicalConstants::hbar_c / 360.0;
  return -k * radius / (d * d * d);
}

/// Sphere-plate energy: sphere_plate_force integrated in from infinite separation, J.
inline double sphere_plate_energy(double radius, double d) {
  detail::require_sphere_pfa(radius, d);
  constexpr double k = PhysicalConstants::pi * PhysicalConstants::pi * PhysicalConstants::pi *
                       PhysicalConstants::hbar_c / 720.0;
  return -k * radius / (d * d);
}

/// -pi^2 hbar c / 1440, J m.
inline constexpr double kArcPrefactor =
    -PhysicalConstants::pi * PhysicalConstants::pi * PhysicalConstants::hbar_c / 1440.0;

/// Integrand of the arc energy (without prefactor), 1/m^3.
inline double arc_integrand(const geometry::ArcGeometry& geom, double gradient_weight, double y) {
  const double psi = geometry::separation(geom, y);
  const double s = geometry::slope(geom, y);
  return (1.0 + gradient_weight * (2.0 / 3.0) * s * s) / (psi * psi * psi);
}

inline LineEnergy arc_energy(const geometry::ArcGeometry& geom, const EnergyModel& model,
                             const numerics::QuadratureSpec& spec = {}) {
  geom.require_clearance();
  const double weight = model.gradient_weight();
  auto integrand = [&geom, weight](double y) { return arc_integrand(geom, weight, y); };
  const auto q = numerics::integrate(integrand, -geom.half_span(), geom.half_span(), spec);
  return {kArcPrefactor * q.value, model, std::abs(kArcPrefactor) * q.error_estimate};
}

}  // namespace arcplate::casimir
