#pragma once

// Kirchhoff-Love thin-plate bending of an isotropic membrane.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arcplate/error.hpp"
#include "arcplate/geometry.hpp"
#include "arcplate/numerics.hpp"

namespace arcplate::elasticity {

/// Poisson ratio above which an isotropic bulk solid would be unphysical.
inline constexpr double kIsotropicPoissonLimit = 0.5;

struct Material {
  std::string name;
  double youngs_modulus_pa = 0.0;
  double poisson_ratio = 0.0;
  std::optional<double> sigma_youngs_pa;
  std::optional<double> sigma_poisson;
  /// Short tag for column names, e.g. "au". Falls back to name when empty.
  std::string symbol;

  const std::string& tag() const { return symbol.empty() ? name : symbol; }

  /// Thin-film values may legitimately exceed the bulk isotropic bound.
  bool poisson_above_isotropic_limit() const { return poisson_ratio > kIsotropicPoissonLimit; }

  /// Throws InvalidArgument naming the offending field.
  void validate() const {
    if (name.empty()) {
      throw Error(ErrorCode::InvalidArgument, "name: material name must be non-empty");
    }
    if (!(std::isfinite(youngs_modulus_pa) && youngs_modulus_pa > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "youngs_modulus_pa: must be positive and finite for material '" + name + "'");
    }
    if (!(poisson_ratio > -1.0 && poisson_ratio < 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "poisson_ratio: must lie in (-1, 1) for material '" + name + "'");
    }
    if (sigma_youngs_pa && !(*sigma_youngs_pa >= 0.0 && std::isfinite(*sigma_youngs_pa))) {
      throw Error(ErrorCode::InvalidArgument,
                  "sigma_e_pa: must be finite and >= 0 for material '" + name + "'");
    }
    if (sigma_poisson && !(*sigma_poisson >= 0.0 && std::isfinite(*sigma_poisson))) {
      throw Error(ErrorCode::InvalidArgument,
                  "sigma_nu: must be finite and >= 0 for material '" + name + "'");
    }
  }
};

/// Thin-film gold and silver.
inline std::vector<Material> builtin_materials() {
  return {
      Material{"gold", 97e9, 0.421, 10e9, 0.06, "au"},
      Material{"silver", 83.6e9, 0.517, std::nullopt, std::nullopt, "ag"},
  };
}

namespace detail {
inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}
}  // namespace detail

/// Case-insensitive lookup by name or symbol.
inline const Material& find_material(const std::vector<Material>& materials,
                                     const std::string& key) {
  const std::string k = detail::lower(key);
  for (const auto& m : materials) {
    if (detail::lower(m.name) == k || (!m.symbol.empty() && detail::lower(m.symbol) == k)) {
      return m;
    }
  }
  throw Error(ErrorCode::NotFound, "unknown material '" + key + "'");
}

/// Returns base with entries of overrides merged in by name; overrides win and
/// new names are appended in their given order.
inline std::vector<Material> merge_materials(std::vector<Material> base,
                                             const std::vector<Material>& overrides) {
  for (const auto& m : overrides) {
    auto it = std::find_if(base.begin(), base.end(), [&](const Material& b) {
      return detail::lower(b.name) == detail::lower(m.name);
    });
    if (it == base.end()) {
      base.push_back(m);
    } else {
      Material merged = m;
      if (merged.symbol.empty()) merged.symbol = it->symbol;
      *it = merged;
    }
  }
  return base;
}

struct CurvatureTensor {
  double k11 = 0.0;
  double k12 = 0.0;
  double k22 = 0.0;

  /// Cylindrical bending of radius R about the depth axis.
  static CurvatureTensor arc(double radius) { return {1.0 / radius, 0.0, 0.0}; }
};

/// D = E t^3 / (12 (1 - nu^2)).
inline double bending_stiffness(const Material& mat, double thickness) {
  if (!(thickness > 0.0) || !std::isfinite(thickness)) {
    throw Error(ErrorCode::NonPositiveThickness, "thickness must be positive and finite");
  }
  const double nu = mat.poisson_ratio;
  return mat.youngs_modulus_pa * thickness * thickness * thickness / (12.0 * (1.0 - nu * nu));
}

/// Bending strain energy per unit area, J/m^2.
inline double strain_energy_density(double stiffness, double poisson_ratio,
                                    const CurvatureTensor& k) {
  if (!(stiffness >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "bending stiffness must be non-negative");
  }
  const double trace = k.k11 + k.k22;
  const double det = k.k11 * k.k22 - k.k12 * k.k12;
  return 0.5 * stiffness * (trace * trace - 2.0 * (1.0 - poisson_ratio) * det);
}

/// Bending energy per unit depth of the arc, J/m: u(D, nu, diag(1/R, 0)) * L.
inline double bending_energy(const Material& mat, double thickness,
                             const geometry::ArcGeometry& geom,
                             const numerics::QuadratureSpec& spec = {}) {
  const double d = bending_stiffness(mat, thickness);
  const double u = strain_energy_density(d, mat.poisson_ratio, CurvatureTensor::arc(geom.radius()));
  return u * geometry::arc_length(geom, spec);
}

struct ThinPlateReport {
  double ratio_a = 0.0;  ///< t / a
  double ratio_b = 0.0;  ///< t / b
  bool a_ok = false;     ///< t < a / 10
  bool b_ok = false;     ///< t < b / 10
  bool pass() const { return a_ok && b_ok; }
};

/// Tenth-rule check of membrane thickness against both lateral dimensions.
inline ThinPlateReport thin_plate_check(double thickness, double span_a, double span_b) {
  ThinPlateReport r;
  r.ratio_a = thickness / span_a;
  r.ratio_b = thickness / span_b;
  r.a_ok = thickness > 0.0 && thickness < span_a / 10.0;
  r.b_ok = thickness > 0.0 && thickness < span_b / 10.0;
  return r;
}

}  // namespace arcplate::elasticity
