#pragma once

// Serialization: unit-suffixed lengths, sweep CSV, materials JSON.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "arcplate/analysis.hpp"
#include "arcplate/constants.hpp"
#include "arcplate/elasticity.hpp"
#include "arcplate/error.hpp"

namespace arcplate::io {

inline constexpr std::string_view kSweepSchema = "arcplate-sweep/1";
inline constexpr std::string_view kEnergySchema = "arcplate-energy/1";

/// Shortest decimal string that round-trips to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Rounds to four significant figures for display, e.g. 9.531e-09.
inline std::string format_display(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline double parse_number(std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last || text.empty()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

/// Parses a length with a mandatory unit suffix (m, mm, um, nm) into metres.
/// The decimal exponent of the unit is folded into the literal before
/// conversion, so "0.1um" yields exactly the double nearest 1e-7.
inline double parse_length(std::string_view text) {
  struct Unit {
    std::string_view suffix;
    int exponent;
  };
  static constexpr Unit units[] = {
      {"\xC2\xB5m", -6}, {"\xCE\xBCm", -6}, {"um", -6}, {"nm", -9}, {"mm", -3}, {"m", 0},
  };
  for (const auto& u : units) {
    if (text.size() > u.suffix.size() && text.ends_with(u.suffix)) {
      std::string_view number = text.substr(0, text.size() - u.suffix.size());
      int exp10 = u.exponent;
      std::string mantissa(number);
      if (const auto e = number.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = std::string(number.substr(0, e));
        const std::string_view exp_part = number.substr(e + 1);
        int parsed = 0;
        const auto* first = exp_part.data();
        if (!exp_part.empty() && *first == '+') ++first;
        const auto res = std::from_chars(first, exp_part.data() + exp_part.size(), parsed);
        if (res.ec != std::errc{} || res.ptr != exp_part.data() + exp_part.size()) {
          throw Error(ErrorCode::InvalidArgument, "malformed length '" + std::string(text) + "'");
        }
        exp10 += parsed;
      }
      if (mantissa.empty() || mantissa.find_first_of("eE") != std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "malformed length '" + std::string(text) + "'");
      }
      try {
        parse_number(mantissa);
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidArgument, "malformed length '" + std::string(text) + "'");
      }
      return parse_number(mantissa + "e" + std::to_string(exp10));
    }
  }
  throw Error(ErrorCode::InvalidArgument,
              "length '" + std::string(text) + "' needs a unit suffix (m, mm, um, nm)");
}

// ---------------------------------------------------------------------------
// Sweep CSV

inline std::vector<std::string> sweep_header(const analysis::SweepConfig& cfg) {
  std::vector<std::string> h{"gap_m"};
  for (const auto& m : cfg.models) h.push_back("u_" + m.label() + "_J_per_m");
  for (const auto& mat : cfg.materials) {
    h.push_back("t_max_" + elasticity::detail::lower(mat.tag()) + "_m");
  }
  h.push_back("delta");
  return h;
}

/// Metadata lines (without the leading "# ") sufficient to reproduce a run.
inline std::vector<std::string> sweep_metadata(const analysis::SweepConfig& cfg,
                                               const std::string& command) {
  std::vector<std::string> lines;
  lines.push_back("schema_version: " + std::string(kSweepSchema));
  lines.push_back("command: " + command);
  lines.push_back("constants: hbar_J_s=" + format_number(PhysicalConstants::hbar) +
                  " c_m_per_s=" + format_number(PhysicalConstants::c));
  lines.push_back("quadrature: " + cfg.quadrature.describe());
  lines.push_back("geometry: radius_m=" + format_number(cfg.radius_m) +
                  " half_span_m=" + format_number(cfg.half_span_m) +
                  " gap_min_m=" + format_number(cfg.gap_min_m) +
                  " gap_max_m=" + format_number(cfg.gap_max_m) +
                  " points=" + std::to_string(cfg.points) + " spacing=linear");
  for (const auto& m : cfg.materials) {
    lines.push_back("material: " + m.name + " youngs_modulus_pa=" +
                    format_number(m.youngs_modulus_pa) +
                    " poisson_ratio=" + format_number(m.poisson_ratio));
  }
  std::string models = "models:";
  for (const auto& m : cfg.models) models += " " + m.label();
  lines.push_back(models);
  lines.push_back("thickness_model: " + cfg.reference.label());
  lines.push_back("delta: |t(" + cfg.compared.label() + ") - t(" + cfg.reference.label() +
                  ")| / t(" + cfg.reference.label() + ")");
  return lines;
}

/// Writes "# "-prefixed metadata, the header row, then one line per row.
/// Thickness columns come from the configured reference model.
inline void write_sweep_csv(std::ostream& out, const analysis::SweepTable& table,
                            const std::vector<std::string>& metadata) {
  for (const auto& line : metadata) out << "# " << line << '\n';
  const auto header = sweep_header(table.config);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    out << format_number(row.gap_m);
    for (double u : row.energies) out << ',' << format_number(u);
    for (double t : row.t_reference) out << ',' << format_number(t);
    out << ',' << format_number(row.delta()) << '\n';
  }
}

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw Error(ErrorCode::NotFound, "no CSV column '" + std::string(name) + "'");
  }
};

inline std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    auto cells = split_commas(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(ErrorCode::ConfigError, "CSV row has " + std::to_string(cells.size()) +
                                              " fields, header has " +
                                              std::to_string(t.header.size()));
    }
    std::vector<double> values;
    for (const auto& c : cells) values.push_back(parse_number(c));
    t.rows.push_back(std::move(values));
  }
  if (!have_header) throw Error(ErrorCode::ConfigError, "CSV has no header row");
  return t;
}

// ---------------------------------------------------------------------------
// Materials JSON
//
// [ {"name": "gold", "youngs_modulus_pa": 9.7e10, "poisson_ratio": 0.421,
//    "sigma_e_pa": 1e10, "sigma_nu": 0.06, "symbol": "au"}, ... ]

namespace detail {
inline double number_field(const nlohmann::json& entry, const char* key, std::size_t index) {
  const auto it = entry.find(key);
  if (it == entry.end()) {
    throw Error(ErrorCode::ConfigError,
                std::string(key) + ": missing in materials entry " + std::to_string(index));
  }
  if (!it->is_number()) {
    throw Error(ErrorCode::ConfigError,
                std::string(key) + ": must be a number in materials entry " + std::to_string(index));
  }
  return it->get<double>();
}
}  // namespace detail

inline std::vector<elasticity::Material> parse_materials_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("materials file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorCode::ConfigError, "materials file must hold a JSON array");
  }
  std::vector<elasticity::Material> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    if (!entry.is_object()) {
      throw Error(ErrorCode::ConfigError, "materials entry " + std::to_string(i) + " is not an object");
    }
    elasticity::Material m;
    const auto name = entry.find("name");
    if (name == entry.end() || !name->is_string()) {
      throw Error(ErrorCode::ConfigError,
                  "name: missing or not a string in materials entry " + std::to_string(i));
    }
    m.name = name->get<std::string>();
    m.youngs_modulus_pa = detail::number_field(entry, "youngs_modulus_pa", i);
    m.poisson_ratio = detail::number_field(entry, "poisson_ratio", i);
    if (entry.contains("sigma_e_pa")) m.sigma_youngs_pa = detail::number_field(entry, "sigma_e_pa", i);
    if (entry.contains("sigma_nu")) m.sigma_poisson = detail::number_field(entry, "sigma_nu", i);
    if (const auto sym = entry.find("symbol"); sym != entry.end()) {
      if (!sym->is_string()) {
        throw Error(ErrorCode::ConfigError,
                    "symbol: must be a string in materials entry " + std::to_string(i));
      }
      m.symbol = sym->get<std::string>();
    }
    try {
      m.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, e.what());
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Builtins merged with the entries of a materials file (file wins by name).
inline std::vector<elasticity::Material> load_materials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open materials file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return elasticity::merge_materials(elasticity::builtin_materials(),
                                     parse_materials_json(buf.str()));
}

inline nlohmann::json to_json(const elasticity::Material& m) {
  nlohmann::json j{{"name", m.name},
                   {"youngs_modulus_pa", m.youngs_modulus_pa},
                   {"poisson_ratio", m.poisson_ratio}};
  if (m.sigma_youngs_pa) j["sigma_e_pa"] = *m.sigma_youngs_pa;
  if (m.sigma_poisson) j["sigma_nu"] = *m.sigma_poisson;
  if (!m.symbol.empty()) j["symbol"] = m.symbol;
  return j;
}

inline nlohmann::json constants_json() {
  return {{"hbar_J_s", PhysicalConstants::hbar}, {"c_m_per_s", PhysicalConstants::c}};
}

inline nlohmann::json quadrature_json(const numerics::QuadratureSpec& spec) {
  nlohmann::json j{{"relative_tolerance", spec.relative_tolerance},
                   {"absolute_tolerance", spec.absolute_tolerance},
                   {"max_subdivisions", spec.max_subdivisions}};
  if (spec.is_adaptive()) {
    j["method"] = "adaptive-simpson";
  } else {
    j["method"] = "gauss-legendre";
    j["order"] = std::get<numerics::GaussLegendre>(spec.method).order;
  }
  return j;
}

}  // namespace arcplate::io
