#pragma once

// Command-line front end. run() is kept free of process-global state so the
// test suites can drive it in-process with captured streams.
//
// Exit codes: 0 ok, 1 numerical failure, 2 usage, 3 physics precondition,
// 4 config file.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arcplate/arcplate.hpp"

namespace arcplate::cli {

enum ExitCode : int {
  kOk = 0,
  kNumericalFailure = 1,
  kUsage = 2,
  kPhysics = 3,
  kConfig = 4,
};

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidInterval:
    case ErrorCode::NotFound:
      return kUsage;
    case ErrorCode::OutOfSpan:
    case ErrorCode::ContactViolation:
    case ErrorCode::PfaViolation:
    case ErrorCode::NonPositiveGap:
    case ErrorCode::NonPositiveThickness:
    case ErrorCode::NonNegativeEnergy:
      return kPhysics;
    case ErrorCode::ConfigError:
      return kConfig;
    case ErrorCode::NonConvergence:
    case ErrorCode::NonFiniteIntegrand:
    case ErrorCode::ZeroReference:
      return kNumericalFailure;
  }
  return kNumericalFailure;
}

inline casimir::EnergyModel parse_model(std::string text) {
  text = elasticity::detail::lower(text);
  if (text == "pfa") return casimir::EnergyModel::pfa();
  if (text == "ntlo") return casimir::EnergyModel::ntlo();
  for (std::string_view prefix : {"scaled:", "scaled"}) {
    if (text.starts_with(prefix) && text.size() > prefix.size()) {
      return casimir::EnergyModel::scaled_ntlo(io::parse_number(text.substr(prefix.size())));
    }
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown energy model '" + text + "' (expected pfa, ntlo or scaled:<eps>)");
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

struct QuadratureFlags {
  std::string method = "simpson";
  int order = 64;
  double rel_tol = 1e-10;
  int max_subdivisions = 60;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--method", method, "Quadrature: simpson | gauss")->capture_default_str();
    cmd->add_option("--order", order, "Gauss-Legendre order")->capture_default_str();
    cmd->add_option("--rel-tol", rel_tol, "Relative quadrature tolerance")->capture_default_str();
    cmd->add_option("--max-subdivisions", max_subdivisions, "Adaptive bisection depth limit")
        ->capture_default_str();
  }

  numerics::QuadratureSpec spec() const {
    numerics::QuadratureSpec s;
    if (method == "gauss") {
      s.method = numerics::GaussLegendre{order};
    } else if (method != "simpson") {
      throw Error(ErrorCode::InvalidArgument, "unknown quadrature method '" + method + "'");
    }
    s.relative_tolerance = rel_tol;
    s.max_subdivisions = max_subdivisions;
    s.validate();
    return s;
  }
};

struct Options {
  // shared
  std::string radius = "100um";
  std::string span = "6um";
  std::string materials_file;
  QuadratureFlags quad;

  // sweep
  std::string gap_min = "0.1um";
  std::string gap_max = "1um";
  std::size_t points = 1000;
  std::string materials = "gold,silver";
  std::string models = "pfa,ntlo";
  std::string compare = "pfa";
  std::string thickness_model = "ntlo";
  std::string output;
  std::string json_sidecar;
  unsigned threads = 1;

  // energy / validate
  std::string geometry = "arc";
  std::string gap = "1um";
  std::string model = "ntlo";
  std::string quantity;
  std::string thickness;
  std::string plate_a;
  std::string plate_b;

  // materials show
  std::string material_name;
};

namespace detail {

inline std::vector<elasticity::Material> material_db(const Options& o) {
  if (o.materials_file.empty()) return elasticity::builtin_materials();
  return io::load_materials(o.materials_file);
}

inline void warn_materials(const std::vector<elasticity::Material>& mats, std::ostream& err) {
  for (const auto& m : mats) {
    if (m.poisson_above_isotropic_limit()) {
      err << "warning: " << m.name << " poisson_ratio " << m.poisson_ratio
          << " exceeds the isotropic bulk limit " << elasticity::kIsotropicPoissonLimit << '\n';
    }
  }
}

inline void print_display_table(const analysis::SweepTable& table, std::ostream& out) {
  const auto& rows = table.rows;
  std::vector<std::size_t> picks;
  constexpr std::size_t kShown = 10;
  if (rows.size() <= kShown) {
    for (std::size_t i = 0; i < rows.size(); ++i) picks.push_back(i);
  } else {
    for (std::size_t k = 0; k < kShown; ++k) {
      picks.push_back((k * (rows.size() - 1) + (kShown - 1) / 2) / (kShown - 1));
    }
  }
  out << std::setw(12) << "gap_um";
  for (const auto& m : table.config.materials) out << std::setw(14) << ("t_" + m.tag() + "_nm");
  out << std::setw(12) << "delta" << '\n';
  for (std::size_t i : picks) {
    const auto& r = rows[i];
    out << std::setw(12) << std::setprecision(4) << r.gap_m * 1e6;
    for (double t : r.t_reference) out << std::setw(14) << std::setprecision(4) << t * 1e9;
    out << std::setw(12) << io::format_display(r.delta()) << '\n';
  }
}

inline int cmd_sweep(const Options& o, const std::string& command, std::ostream& out,
                     std::ostream& err) {
  analysis::SweepConfig cfg;
  cfg.radius_m = io::parse_length(o.radius);
  cfg.half_span_m = 0.5 * io::parse_length(o.span);
  cfg.gap_min_m = io::parse_length(o.gap_min);
  cfg.gap_max_m = io::parse_length(o.gap_max);
  if (cfg.gap_min_m > cfg.gap_max_m) {
    throw Error(ErrorCode::InvalidInterval, "gap-min exceeds gap-max");
  }
  cfg.points = o.points;
  cfg.threads = o.threads;
  cfg.quadrature = o.quad.spec();

  const auto db = material_db(o);
  cfg.materials.clear();
  for (const auto& name : split_list(o.materials)) {
    cfg.materials.push_back(elasticity::find_material(db, name));
  }
  cfg.models.clear();
  for (const auto& name : split_list(o.models)) cfg.models.push_back(parse_model(name));
  cfg.compared = parse_model(o.compare);
  cfg.reference = parse_model(o.thickness_model);
  warn_materials(cfg.materials, err);

  const auto far = geometry::validate_pfa(cfg.radius_m, cfg.half_span_m, cfg.gap_max_m);
  if (far.status == geometry::Status::Warn) {
    err << "warning: gap/radius ratio " << far.ratio << " exceeds " << geometry::kPfaWarnRatio
        << '\n';
  }

  const auto table = analysis::run_sweep(cfg);
  const auto metadata = io::sweep_metadata(cfg, command);

  if (o.output.empty()) {
    io::write_sweep_csv(out, table, metadata);
  } else {
    std::ofstream file(o.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.output + "'");
    io::write_sweep_csv(file, table, metadata);
    print_display_table(table, out);
  }

  if (!o.json_sidecar.empty()) {
    nlohmann::json j;
    j["schema_version"] = io::kSweepSchema;
    j["command"] = command;
    j["csv"] = o.output.empty() ? "<stdout>" : o.output;
    j["rows"] = table.rows.size();
    j["metadata"] = {
        {"constants", io::constants_json()},
        {"quadrature", io::quadrature_json(cfg.quadrature)},
        {"geometry",
         {{"radius_m", cfg.radius_m},
          {"half_span_m", cfg.half_span_m},
          {"gap_min_m", cfg.gap_min_m},
          {"gap_max_m", cfg.gap_max_m},
          {"points", cfg.points}}},
        {"timestamp", utc_timestamp()},
    };
    for (const auto& m : cfg.materials) j["metadata"]["materials"].push_back(io::to_json(m));
    for (const auto& m : cfg.models) j["metadata"]["models"].push_back(m.label());
    std::ofstream file(o.json_sidecar);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.json_sidecar + "'");
    file << j.dump(2) << '\n';
  }
  return kOk;
}

inline int cmd_energy(const Options& o, const std::string& command, std::ostream& out) {
  nlohmann::json j;
  j["schema_version"] = io::kEnergySchema;
  j["command"] = command;
  j["metadata"] = {{"constants", io::constants_json()}, {"timestamp", utc_timestamp()}};
  const double gap = io::parse_length(o.gap);

  if (o.geometry == "arc") {
    if (!o.quantity.empty() && o.quantity != "energy") {
      throw Error(ErrorCode::InvalidArgument, "arc geometry supports --quantity energy only");
    }
    const geometry::ArcGeometry geom(io::parse_length(o.radius), 0.5 * io::parse_length(o.span),
                                     gap);
    const auto spec = o.quad.spec();
    const auto e = casimir::arc_energy(geom, parse_model(o.model), spec);
    j["geometry"] = "arc";
    j["quantity"] = "energy_per_depth";
    j["model"] = e.model.label();
    j["value"] = e.value;
    j["unit"] = "J/m";
    j["quadrature_error"] = e.quadrature_error;
    j["metadata"]["quadrature"] = io::quadrature_json(spec);
    j["metadata"]["geometry"] = {{"radius_m", geom.radius()},
                                 {"half_span_m", geom.half_span()},
                                 {"center_gap_m", geom.center_gap()}};
  } else if (o.geometry == "sphere") {
    const double r = io::parse_length(o.radius);
    const std::string q = o.quantity.empty() ? "energy" : o.quantity;
    j["geometry"] = "sphere";
    j["model"] = "pfa";
    if (q == "energy") {
      j["quantity"] = "energy";
      j["value"] = casimir::sphere_plate_energy(r, gap);
      j["unit"] = "J";
    } else if (q == "force") {
      j["quantity"] = "force";
      j["value"] = casimir::sphere_plate_force(r, gap);
      j["unit"] = "N";
    } else {
      throw Error(ErrorCode::InvalidArgument, "sphere geometry supports --quantity energy|force");
    }
    j["quadrature_error"] = 0.0;
    j["metadata"]["geometry"] = {{"radius_m", r}, {"gap_m", gap}};
  } else if (o.geometry == "parallel") {
    const std::string q = o.quantity.empty() ? "pressure" : o.quantity;
    j["geometry"] = "parallel";
    j["model"] = "exact";
    if (q == "pressure") {
      j["quantity"] = "pressure";
      j["value"] = casimir::parallel_plate_pressure(gap);
      j["unit"] = "Pa";
    } else if (q == "energy-density") {
      j["quantity"] = "energy_density";
      j["value"] = casimir::parallel_plate_energy_density(gap);
      j["unit"] = "J/m^2";
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "parallel geometry supports --quantity pressure|energy-density");
    }
    j["quadrature_error"] = 0.0;
    j["metadata"]["geometry"] = {{"gap_m", gap}};
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "unknown geometry '" + o.geometry + "' (expected arc, sphere or parallel)");
  }
  out << j.dump(2) << '\n';
  return kOk;
}

inline int cmd_validate(const Options& o, std::ostream& out) {
  const double r = io::parse_length(o.radius);
  const double span = io::parse_length(o.span);
  const double gap = io::parse_length(o.gap);
  bool hard_failure = false;

  const auto pfa = geometry::validate_pfa(r, 0.5 * span, gap);
  out << "pfa_ratio: " << io::format_number(pfa.ratio) << " (" << geometry::to_string(pfa.status)
      << "; warn > " << geometry::kPfaWarnRatio << ", fail >= " << geometry::kPfaFailRatio
      << ")\n";
  out << "contact_margin_m: " << io::format_number(pfa.contact_margin) << " ("
      << (pfa.clears_plate() ? "pass" : "fail") << ")\n";
  hard_failure = !pfa.ok();

  if (!o.thickness.empty()) {
    const double t = io::parse_length(o.thickness);
    const double a = o.plate_a.empty() ? span : io::parse_length(o.plate_a);
    const double b = o.plate_b.empty() ? span : io::parse_length(o.plate_b);
    const auto tp = elasticity::thin_plate_check(t, a, b);
    out << "thin_plate_ratio_a: " << io::format_number(tp.ratio_a) << " ("
        << (tp.a_ok ? "pass" : "fail") << "; requires t < a/10)\n";
    out << "thin_plate_ratio_b: " << io::format_number(tp.ratio_b) << " ("
        << (tp.b_ok ? "pass" : "fail") << "; requires t < b/10)\n";
    hard_failure = hard_failure || !tp.pass();
  }
  out << "overall: " << (hard_failure ? "fail" : "pass") << '\n';
  return hard_failure ? kPhysics : kOk;
}

inline int cmd_materials_list(const Options& o, std::ostream& out) {
  for (const auto& m : material_db(o)) {
    out << m.name << " youngs_modulus_pa=" << io::format_number(m.youngs_modulus_pa)
        << " poisson_ratio=" << io::format_number(m.poisson_ratio) << '\n';
  }
  return kOk;
}

inline int cmd_materials_show(const Options& o, std::ostream& out) {
  const auto db = material_db(o);
  out << io::to_json(elasticity::find_material(db, o.material_name)).dump(2) << '\n';
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Casimir arc-plate critical thickness calculator", "arcplate"};
  app.require_subcommand(1);

  auto add_arc_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--r", o.radius, "Arc radius, unit-suffixed (e.g. 100um)")->capture_default_str();
    cmd->add_option("--span", o.span, "Full arc span 2*y_max, unit-suffixed")->capture_default_str();
  };

  auto* sweep = app.add_subcommand("sweep", "Critical thickness over a gap range (CSV)");
  add_arc_flags(sweep);
  sweep->add_option("--gap-min", o.gap_min, "Smallest center gap")->capture_default_str();
  sweep->add_option("--gap-max", o.gap_max, "Largest center gap")->capture_default_str();
  sweep->add_option("--points", o.points, "Number of uniformly spaced gaps")->capture_default_str();
  sweep->add_option("--materials", o.materials, "Comma-separated material names")
      ->capture_default_str();
  sweep->add_option("--models", o.models, "Comma-separated energy models (pfa, ntlo, scaled:<eps>)")
      ->capture_default_str();
  sweep->add_option("--compare", o.compare, "Model compared against the thickness model in delta")
      ->capture_default_str();
  sweep->add_option("--thickness-model", o.thickness_model, "Model used for t_max columns")
      ->capture_default_str();
  sweep->add_option("--materials-file", o.materials_file, "JSON materials merged over builtins");
  sweep->add_option("-o,--output", o.output, "CSV output path (default: stdout)");
  sweep->add_option("--json", o.json_sidecar, "JSON metadata sidecar path");
  sweep->add_option("--threads", o.threads, "Worker threads (0 = hardware)")->capture_default_str();
  o.quad.add_to(sweep);

  auto* energy = app.add_subcommand("energy", "Single Casimir energy evaluation (JSON)");
  add_arc_flags(energy);
  energy->add_option("--geometry", o.geometry, "arc | sphere | parallel")->capture_default_str();
  energy->add_option("--gap", o.gap, "Gap (arc: at the center)")->capture_default_str();
  energy->add_option("--model", o.model, "Arc energy model")->capture_default_str();
  energy->add_option("--quantity", o.quantity,
                     "sphere: energy|force; parallel: pressure|energy-density");
  o.quad.add_to(energy);

  auto* validate = app.add_subcommand("validate", "Proximity, contact and thin-plate checks");
  add_arc_flags(validate);
  validate->add_option("--gap", o.gap, "Center gap")->capture_default_str();
  validate->add_option("--thickness", o.thickness, "Membrane thickness for the thin-plate check");
  validate->add_option("--plate-a", o.plate_a, "Plate width (default: span)");
  validate->add_option("--plate-b", o.plate_b, "Plate length (default: span)");

  auto* materials = app.add_subcommand("materials", "Inspect the material database");
  materials->require_subcommand(1);
  materials->add_option("--materials-file", o.materials_file, "JSON materials merged over builtins");
  auto* list = materials->add_subcommand("list", "List materials");
  auto* show = materials->add_subcommand("show", "Show one material as JSON");
  show->add_option("name", o.material_name, "Material name or symbol")->required();

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*sweep) return detail::cmd_sweep(o, command, out, err);
    if (*energy) return detail::cmd_energy(o, command, out);
    if (*validate) return detail::cmd_validate(o, out);
    if (*list) return detail::cmd_materials_list(o, out);
    if (*show) return detail::cmd_materials_show(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace arcplate::cli
