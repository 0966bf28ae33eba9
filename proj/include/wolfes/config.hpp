#pragma once

// Run configuration: `key = value` files with `#` comments, and the
// resolved-constants state file written by `resolve`.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wolfes/errors.hpp"
#include "wolfes/model.hpp"

namespace wolfes {

enum class OutputFormat { kJson, kCsv };

struct RunConfig {
  double omega = 1.0;
  double g1_squared = 3.0;
  unsigned max_quanta = 6;
  std::size_t grid_points = 2001;
  double domain_extent = 12.0;
  double tol = 1e-4;
  unsigned sector_multiplicity = 1;
  OutputFormat format = OutputFormat::kJson;
  std::string out;  // empty: standard output

  // 3D check; --grid-points applies per axis when it is <= 81.
  double extent_3d = 7.0;
  double tol_3d = 5e-3;
  std::size_t k_3d = 6;

  std::vector<double> sweep{0.0, 1.0, 3.0, 7.5};
  std::string config_path;
  std::string state_path;  // empty: derived from config_path

  std::size_t n_per_axis_3d() const { return grid_points <= 81 ? grid_points : 61; }

  std::string resolved_state_path() const {
    if (!state_path.empty()) return state_path;
    if (!config_path.empty()) return config_path + ".state";
    return "wolfes.state";
  }

  void validate() const {
    ModelParams(omega, g1_squared);
    if (grid_points < 3) throw InvalidArgument("grid_points must be at least 3");
    if (!(domain_extent > 0.0)) throw InvalidArgument("domain_extent must be positive");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    if (sector_multiplicity != 1 && sector_multiplicity != 2) throw InvalidArgument("sector_mult must be 1 or 2");
    if (!(extent_3d > 0.0)) throw InvalidArgument("extent_3d must be positive");
    if (!(tol_3d > 0.0)) throw InvalidArgument("tol_3d must be positive");
    if (k_3d < 1 || k_3d > 10) throw InvalidArgument("k_3d must be in 1..10");
    if (sweep.empty()) throw InvalidArgument("sweep must list at least one g1^2 value");
    for (double g : sweep) {
      if (!(g >= 0.0)) throw InvalidArgument("sweep values must be nonnegative");
    }
  }

  ModelParams params() const { return {omega, g1_squared}; }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string normalize_key(std::string k) {
  std::replace(k.begin(), k.end(), '-', '_');
  std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return std::tolower(c); });
  return k;
}

inline double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

inline unsigned long parse_unsigned(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d < 0.0 || d != static_cast<double>(static_cast<unsigned long>(d))) {
    throw InvalidArgument("config: '" + key + "' expects a nonnegative integer, got '" + v + "'");
  }
  return static_cast<unsigned long>(d);
}

}  // namespace detail

/// Parses `key = value` lines; `#` starts a comment.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = detail::normalize_key(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw InvalidArgument("line " + std::to_string(lineno) + ": empty key");
    kv[key] = detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline void apply_setting(RunConfig& c, const std::string& raw_key, const std::string& v) {
  const std::string key = detail::normalize_key(raw_key);
  if (key == "omega") c.omega = detail::parse_double(key, v);
  else if (key == "g1sq" || key == "g1_squared") c.g1_squared = detail::parse_double(key, v);
  else if (key == "max_quanta") c.max_quanta = static_cast<unsigned>(detail::parse_unsigned(key, v));
  else if (key == "grid_points") c.grid_points = detail::parse_unsigned(key, v);
  else if (key == "domain_extent") c.domain_extent = detail::parse_double(key, v);
  else if (key == "tol") c.tol = detail::parse_double(key, v);
  else if (key == "sector_mult" || key == "sector_multiplicity") {
    c.sector_multiplicity = static_cast<unsigned>(detail::parse_unsigned(key, v));
  } else if (key == "format") {
    if (v == "json") c.format = OutputFormat::kJson;
    else if (v == "csv") c.format = OutputFormat::kCsv;
    else throw InvalidArgument("config: format must be json or csv");
  } else if (key == "out") c.out = v;
  else if (key == "extent_3d") c.extent_3d = detail::parse_double(key, v);
  else if (key == "tol_3d") c.tol_3d = detail::parse_double(key, v);
  else if (key == "k_3d") c.k_3d = detail::parse_unsigned(key, v);
  else if (key == "state_file") c.state_path = v;
  else if (key == "sweep") {
    c.sweep.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) c.sweep.push_back(detail::parse_double(key, detail::trim(item)));
  } else {
    throw InvalidArgument("config: unknown key '" + raw_key + "'");
  }
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  for (const auto& [k, v] : parse_key_values(in)) apply_setting(base, k, v);
  base.config_path = path;
  return base;
}

struct ResolvedState {
  double sho_offset = kHalfLineShoOffset;
  RadialRule radial_rule = RadialRule::kCandidate;
};

inline std::string format_state(const ResolvedState& s) {
  std::ostringstream os;
  os << "# resolved formula constants (written by `wolfes resolve`)\n"
     << "sho_offset = " << (s.sho_offset == kPrintedShoOffset ? "0.5" : "1") << "\n"
     << "radial_rule = " << to_string(s.radial_rule) << "\n";
  return os.str();
}

inline void write_state(const std::string& path, const ResolvedState& s) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write state file " + path);
  out << format_state(s);
}

/// Returns nothing if the file does not exist.
inline std::optional<ResolvedState> read_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  const auto kv = parse_key_values(in);
  ResolvedState s;
  const auto off = kv.find("sho_offset");
  const auto rule = kv.find("radial_rule");
  if (off == kv.end() || rule == kv.end()) throw InvalidArgument("state file " + path + " is incomplete");
  s.sho_offset = detail::parse_double("sho_offset", off->second);
  require_sho_offset(s.sho_offset);
  if (rule->second == "published") s.radial_rule = RadialRule::kPublished;
  else if (rule->second == "candidate") s.radial_rule = RadialRule::kCandidate;
  else throw InvalidArgument("state file: radial_rule must be published or candidate");
  return s;
}

}  // namespace wolfes
