#include <gtest/gtest.h>

#include <cmath>

#include "arcplate/analysis.hpp"
#include "oracles.hpp"

namespace {

using namespace arcplate;
using analysis::SweepConfig;
using casimir::EnergyModel;
using geometry::ArcGeometry;
using oracle::rel_err;

constexpr double um = 1e-6;
constexpr double nm = 1e-9;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected arcplate::Error";
  return ErrorCode::InvalidArgument;
}

const elasticity::Material& mat(const char* name) {
  static const auto db = elasticity::builtin_materials();
  return elasticity::find_material(db, name);
}

TEST(CriticalThickness, GoldAtOneMicron) {
  const ArcGeometry g(100 * um, 3 * um, 1 * um);
  const double t = analysis::critical_thickness(-1.39e-15, mat("gold"), g);
  EXPECT_LT(rel_err(t, 7.78e-10), 2e-3);
  EXPECT_LT(rel_err(t, 0.7732 * nm), 0.03);

  const double u = casimir::arc_energy(g, EnergyModel::ntlo()).value;
  EXPECT_LT(rel_err(analysis::critical_thickness(u, mat("gold"), g), 7.7312910734165462e-10), 1e-9);
  EXPECT_LT(rel_err(analysis::critical_thickness(u, mat("silver"), g), 7.8161676573495515e-10),
            1e-9);
}

TEST(CriticalThickness, BalancesBendingEnergy) {
  // Independent root of |U| - U_bend(t) by bisection.
  const ArcGeometry g(100 * um, 3 * um, 0.4 * um);
  const double u = casimir::arc_energy(g, EnergyModel::ntlo()).value;
  for (const char* name : {"gold", "silver"}) {
    const double root = oracle::bisect(
        [&](double t) { return std::abs(u) - elasticity::bending_energy(mat(name), t, g); },
        1e-12, 1e-6);
    EXPECT_LT(rel_err(analysis::critical_thickness(u, mat(name), g), root), 1e-12);
  }
}

TEST(CriticalThickness, ScalingAndMaterialRatio) {
  const ArcGeometry g(100 * um, 3 * um, 1 * um);
  const double t1 = analysis::critical_thickness(-1e-15, mat("gold"), g);
  const double t2 = analysis::critical_thickness(-2e-15, mat("gold"), g);
  EXPECT_LT(rel_err(t2 / t1, std::cbrt(2.0)), 1e-14);

  const double ag = analysis::critical_thickness(-1e-15, mat("silver"), g);
  const double au = t1;
  const double c_au = 97e9 / (1 - 0.421 * 0.421);
  const double c_ag = 83.6e9 / (1 - 0.517 * 0.517);
  EXPECT_LT(rel_err(ag / au, std::cbrt(c_au / c_ag)), 1e-14);
  EXPECT_NEAR(ag / au, 1.011, 5e-4);

  EXPECT_EQ(code_of([&] { analysis::critical_thickness(0.0, mat("gold"), g); }),
            ErrorCode::NonNegativeEnergy);
  EXPECT_EQ(code_of([&] { analysis::critical_thickness(1e-15, mat("gold"), g); }),
            ErrorCode::NonNegativeEnergy);
}

TEST(FractionalDeviation, Cases) {
  EXPECT_EQ(analysis::fractional_deviation(2.5, 2.5), 0.0);
  EXPECT_NEAR(analysis::fractional_deviation(1.001, 1.000), 1e-3, 1e-15);
  EXPECT_EQ(code_of([] { analysis::fractional_deviation(1.0, 0.0); }), ErrorCode::ZeroReference);

  const ArcGeometry g(100 * um, 3 * um, 0.1 * um);
  const double t_pfa =
      analysis::critical_thickness(casimir::arc_energy(g, EnergyModel::pfa()).value, mat("gold"), g);
  const double t_ntlo = analysis::critical_thickness(
      casimir::arc_energy(g, EnergyModel::ntlo()).value, mat("gold"), g);
  const double delta = analysis::fractional_deviation(t_pfa, t_ntlo);
  EXPECT_GT(delta, 1e-5);
  EXPECT_LT(delta, 1e-3);
}

TEST(Sweep, SinglePointComposes) {
  SweepConfig cfg;
  cfg.points = 1;
  cfg.gap_min_m = cfg.gap_max_m = 0.5 * um;
  const auto table = analysis::run_sweep(cfg);
  ASSERT_EQ(table.rows.size(), 1u);
  const auto& row = table.rows[0];
  EXPECT_EQ(row.gap_m, 0.5 * um);
  const ArcGeometry g(100 * um, 3 * um, 0.5 * um);
  const double u = casimir::arc_energy(g, EnergyModel::ntlo()).value;
  EXPECT_EQ(row.energies.at(0), u);
  EXPECT_EQ(row.t_max[0][0], analysis::critical_thickness(u, mat("gold"), g));
  EXPECT_EQ(row.t_max[1][0], analysis::critical_thickness(u, mat("silver"), g));
  EXPECT_EQ(row.t_reference[0], row.t_max[0][0]);
}

TEST(Sweep, GapsAreLinearWithExactEndpoints) {
  SweepConfig cfg;
  cfg.points = 7;
  const auto g = cfg.gaps();
  ASSERT_EQ(g.size(), 7u);
  EXPECT_EQ(g.front(), 0.1 * um);
  EXPECT_EQ(g.back(), 1.0 * um);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_NEAR(g[i] - g[i - 1], 0.15 * um, 1e-20);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepConfig cfg;
  cfg.points = 37;
  cfg.models = {EnergyModel::pfa(), EnergyModel::ntlo(), EnergyModel::scaled_ntlo(0.1)};
  const auto serial = analysis::run_sweep(cfg);
  cfg.threads = 4;
  const auto parallel = analysis::run_sweep(cfg);
  ASSERT_EQ(serial.rows.size(), parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    EXPECT_EQ(serial.rows[i].gap_m, parallel.rows[i].gap_m);
    EXPECT_EQ(serial.rows[i].energies, parallel.rows[i].energies);
    EXPECT_EQ(serial.rows[i].t_max, parallel.rows[i].t_max);
    EXPECT_EQ(serial.rows[i].deviation, parallel.rows[i].deviation);
  }
}

TEST(Sweep, Invariants) {
  SweepConfig cfg;
  cfg.points = 200;
  cfg.models = {EnergyModel::pfa(), EnergyModel::ntlo()};
  const auto table = analysis::run_sweep(cfg);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    for (std::size_t m = 0; m < 2; ++m) {
      EXPECT_GT(r.t_max[m][0], 0.0);
      EXPECT_GE(r.t_max[m][1], r.t_max[m][0]);  // NTLO >= PFA
      EXPECT_GE(r.deviation[m], 0.0);
      EXPECT_TRUE(elasticity::thin_plate_check(r.t_max[m][1], 6 * um, 6 * um).pass());
    }
    EXPECT_GT(r.t_max[1][1], r.t_max[0][1]);  // silver > gold
    EXPECT_LT(std::abs(r.deviation[0] - r.deviation[1]), 1e-12);
    if (i > 0) {
      EXPECT_LT(r.t_reference[0], table.rows[i - 1].t_reference[0]);
      EXPECT_LT(r.t_reference[1], table.rows[i - 1].t_reference[1]);
    }
  }
}

TEST(Sweep, Errors) {
  SweepConfig cfg;
  cfg.gap_min_m = 2 * um;
  cfg.gap_max_m = 1 * um;
  EXPECT_EQ(code_of([&] { analysis::run_sweep(cfg); }), ErrorCode::InvalidInterval);

  cfg = {};
  cfg.gap_min_m = 0.04 * um;
  EXPECT_EQ(code_of([&] { analysis::run_sweep(cfg); }), ErrorCode::ContactViolation);

  cfg = {};
  cfg.gap_max_m = 60 * um;
  EXPECT_EQ(code_of([&] { analysis::run_sweep(cfg); }), ErrorCode::PfaViolation);

  cfg = {};
  cfg.points = 0;
  EXPECT_EQ(code_of([&] { analysis::run_sweep(cfg); }), ErrorCode::InvalidArgument);

  cfg = {};
  cfg.materials.clear();
  EXPECT_EQ(code_of([&] { analysis::run_sweep(cfg); }), ErrorCode::InvalidArgument);
}

}  // namespace
