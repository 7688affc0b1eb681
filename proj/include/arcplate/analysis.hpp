#pragma once

// Critical membrane thickness for curvature reversal.
//
// Bending energy per unit depth is cubic in thickness, U_bend(t) = C t^3 with
// C = E L / (24 (1 - nu^2) R^2), so the thickness at which the Casimir energy
// just balances bending is t = (|U_casimir| / C)^(1/3). Thinner membranes
// reverse; the returned value is the supremum of admissible thicknesses.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <sstream>
#include <thread>
#include <vector>

#include "arcplate/casimir.hpp"
#include "arcplate/elasticity.hpp"
#include "arcplate/error.hpp"
#include "arcplate/geometry.hpp"
#include "arcplate/numerics.hpp"

namespace arcplate::analysis {

using casimir::EnergyModel;
using elasticity::Material;
using geometry::ArcGeometry;

/// C in U_bend = C t^3, J/m^4.
inline double bending_constant(const Material& mat, const ArcGeometry& geom,
                               const numerics::QuadratureSpec& spec = {}) {
  return elasticity::bending_energy(mat, 1.0, geom, spec);
}

inline double thickness_from_constant(double casimir_energy, double bending_const) {
  if (!(casimir_energy < 0.0)) {
    throw Error(ErrorCode::NonNegativeEnergy, "Casimir energy must be negative (attractive)");
  }
  return std::cbrt(-casimir_energy / bending_const);
}

inline double critical_thickness(double casimir_energy, const Material& mat,
                                 const ArcGeometry& geom,
                                 const numerics::QuadratureSpec& spec = {}) {
  if (!(casimir_energy < 0.0)) {
    throw Error(ErrorCode::NonNegativeEnergy, "Casimir energy must be negative (attractive)");
  }
  return thickness_from_constant(casimir_energy, bending_constant(mat, geom, spec));
}

/// |t_a - t_b| / t_b.
inline double fractional_deviation(double t_a, double t_b) {
  if (!(t_b > 0.0)) {
    throw Error(ErrorCode::ZeroReference, "reference thickness must be positive");
  }
  return std::abs(t_a - t_b) / t_b;
}

struct SweepConfig {
  double gap_min_m = 0.1e-6;
  double gap_max_m = 1.0e-6;
  std::size_t points = 1000;
  double radius_m = 100e-6;
  double half_span_m = 3e-6;
  std::vector<Material> materials = elasticity::builtin_materials();
  std::vector<EnergyModel> models = {EnergyModel::ntlo()};
  numerics::QuadratureSpec quadrature{};
  /// Deviation is |t(compared) - t(reference)| / t(reference).
  EnergyModel compared = EnergyModel::pfa();
  EnergyModel reference = EnergyModel::ntlo();
  unsigned threads = 1;

  void validate() const {
    if (!(gap_min_m > 0.0) || !std::isfinite(gap_min_m) || !std::isfinite(gap_max_m)) {
      throw Error(ErrorCode::NonPositiveGap, "gap-min must be positive and finite");
    }
    if (gap_min_m > gap_max_m) {
      throw Error(ErrorCode::InvalidInterval, "gap-min exceeds gap-max");
    }
    if (points < 1) throw Error(ErrorCode::InvalidArgument, "points must be >= 1");
    if (materials.empty()) throw Error(ErrorCode::InvalidArgument, "no materials requested");
    if (models.empty()) throw Error(ErrorCode::InvalidArgument, "no energy models requested");
    for (const auto& m : materials) m.validate();
    quadrature.validate();
  }

  /// Uniformly spaced gaps, ascending, endpoints exact.
  std::vector<double> gaps() const {
    std::vector<double> g(points);
    if (points == 1) {
      g[0] = gap_min_m;
      return g;
    }
    const double step = (gap_max_m - gap_min_m) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      g[i] = gap_min_m + static_cast<double>(i) * step;
    }
    g.back() = gap_max_m;
    return g;
  }
};

struct SweepRow {
  double gap_m = 0.0;
  /// J/m, indexed like SweepConfig::models.
  std::vector<double> energies;
  /// m, [material][model] indexed like SweepConfig::materials / models.
  std::vector<std::vector<double>> t_max;
  double energy_compared = 0.0;
  double energy_reference = 0.0;
  /// Indexed by material.
  std::vector<double> t_compared;
  std::vector<double> t_reference;
  std::vector<double> deviation;

  double delta() const { return deviation.front(); }
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;
};

namespace detail {

inline void check_sweep_geometry(const SweepConfig& cfg) {
  // Contact is worst at the smallest gap, the proximity ratio at the largest.
  const ArcGeometry nearest(cfg.radius_m, cfg.half_span_m, cfg.gap_min_m);
  nearest.require_clearance();
  const auto far = geometry::validate_pfa(cfg.radius_m, cfg.half_span_m, cfg.gap_max_m);
  if (far.status == geometry::Status::Fail) {
    std::ostringstream os;
    os << "gap/radius ratio " << far.ratio << " at gap-max violates the proximity limit ("
       << geometry::kPfaFailRatio << ")";
    throw Error(ErrorCode::PfaViolation, os.str());
  }
}

inline SweepRow evaluate_row(const SweepConfig& cfg, double gap,
                             const std::vector<double>& bending_consts) {
  const ArcGeometry geom(cfg.radius_m, cfg.half_span_m, gap);
  SweepRow row;
  row.gap_m = gap;

  auto energy_for = [&](const EnergyModel& model) {
    return casimir::arc_energy(geom, model, cfg.quadrature).value;
  };
  auto cached = [&](const EnergyModel& model) {
    for (std::size_t j = 0; j < cfg.models.size(); ++j) {
      if (cfg.models[j] == model) return row.energies[j];
    }
    return energy_for(model);
  };

  row.energies.reserve(cfg.models.size());
  for (const auto& model : cfg.models) row.energies.push_back(energy_for(model));
  row.energy_compared = cached(cfg.compared);
  row.energy_reference = cached(cfg.reference);

  const std::size_t nm = cfg.materials.size();
  row.t_max.resize(nm);
  row.t_compared.resize(nm);
  row.t_reference.resize(nm);
  row.deviation.resize(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    const double c = bending_consts[i];
    for (double u : row.energies) row.t_max[i].push_back(thickness_from_constant(u, c));
    row.t_compared[i] = thickness_from_constant(row.energy_compared, c);
    row.t_reference[i] = thickness_from_constant(row.energy_reference, c);
    row.deviation[i] = fractional_deviation(row.t_compared[i], row.t_reference[i]);
  }
  return row;
}

}  // namespace detail

/// Evaluates the critical thickness across the configured gap range.
///
/// Rows are independent and may be computed on cfg.threads workers; they are
/// always returned in ascending-gap order and the result does not depend on
/// the thread count.
inline SweepTable run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  detail::check_sweep_geometry(cfg);

  const ArcGeometry templ(cfg.radius_m, cfg.half_span_m, cfg.gap_min_m);
  std::vector<double> bending_consts;
  for (const auto& m : cfg.materials) {
    bending_consts.push_back(bending_constant(m, templ, cfg.quadrature));
  }

  const auto gaps = cfg.gaps();
  SweepTable table{cfg, std::vector<SweepRow>(gaps.size())};

  const std::size_t workers =
      std::clamp<std::size_t>(cfg.threads == 0 ? std::thread::hardware_concurrency() : cfg.threads,
                              1, gaps.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      table.rows[i] = detail::evaluate_row(cfg, gaps[i], bending_consts);
    }
    return table;
  }

  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < gaps.size(); i += workers) {
            table.rows[i] = detail::evaluate_row(cfg, gaps[i], bending_consts);
          }
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return table;
}

}  // namespace arcplate::analysis
