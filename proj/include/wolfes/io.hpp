#pragma once

// JSON / CSV emitters with a fixed number format, so identical inputs give
// byte-identical output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wolfes/model.hpp"
#include "wolfes/report.hpp"

namespace wolfes {

/// 12 significant digits; scientific for |x| < 1e-3 or |x| >= 1e6.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  const double a = std::abs(x);
  if (a < 1e-3 || a >= 1e6) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  } else {
    const int exponent = static_cast<int>(std::floor(std::log10(a)));
    const int decimals = std::max(0, 11 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  }
  return buf;
}

/// JSON numbers cannot be NaN or infinite; those become strings.
inline std::string json_number(double x) {
  if (!std::isfinite(x)) return "\"" + format_number(x) + "\"";
  return format_number(x);
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string sho_offset_text(double offset) { return offset == kPrintedShoOffset ? "1/2" : "1"; }

namespace detail {

inline void json_params(std::ostream& os, const ModelParams& p) {
  os << "  \"params\": {\"omega\": " << json_number(p.omega()) << ", \"g1_squared\": " << json_number(p.g1_squared())
     << ", \"delta\": " << json_number(delta_of(p)) << "}";
}

inline std::string triples_text(const std::vector<QuantumTriple>& members) {
  std::string s;
  for (const auto& t : members) {
    if (!s.empty()) s += ' ';
    s += "(" + std::to_string(t.n1) + "," + std::to_string(t.n2) + "," + std::to_string(t.n3) + ")";
  }
  return s;
}

}  // namespace detail

inline void write_json(std::ostream& os, const VerificationReport& r) {
  os << "{\n";
  detail::json_params(os, r.params);
  os << ",\n  \"status\": " << json_string(r.passed() ? "pass" : "fail");
  os << ",\n  \"checks\": [";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    const auto& c = r.checks[i];
    os << (i ? ",\n" : "\n") << "    {\"name\": " << json_string(c.name) << ", \"status\": "
       << json_string(c.passed ? "pass" : "fail") << ", \"kind\": " << json_string(to_string(c.kind))
       << ", \"measured\": " << json_number(c.measured) << ", \"reference\": " << json_number(c.reference)
       << ", \"tolerance\": " << json_number(c.tolerance) << ", \"provenance\": " << json_string(c.provenance)
       << "}";
  }
  os << (r.checks.empty() ? "]" : "\n  ]");
  os << ",\n  \"resolved\": ";
  if (r.resolved_sho_offset || r.resolved_radial_rule) {
    os << "{";
    bool first = true;
    if (r.resolved_sho_offset) {
      os << "\"sho_offset\": " << json_number(*r.resolved_sho_offset);
      first = false;
    }
    if (r.resolved_radial_rule) {
      os << (first ? "" : ", ") << "\"radial_rule\": " << json_string(to_string(*r.resolved_radial_rule));
    }
    os << "}";
  } else {
    os << "null";
  }
  if (!r.levels.empty()) {
    os << ",\n  \"levels\": [";
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      const auto& l = r.levels[i];
      os << (i ? ",\n" : "\n") << "    {\"energy\": " << json_number(l.energy) << ", \"degeneracy\": " << l.degeneracy
         << ", \"label\": " << json_string(l.label) << "}";
    }
    os << "\n  ]";
  }
  if (!r.discrepancies.empty()) {
    os << ",\n  \"discrepancies\": [";
    for (std::size_t i = 0; i < r.discrepancies.size(); ++i) {
      const auto& d = r.discrepancies[i];
      os << (i ? ",\n" : "\n") << "    {\"quantity\": " << json_string(d.quantity)
         << ", \"parameter\": " << json_number(d.parameter) << ", \"level\": " << d.level
         << ", \"numeric\": " << json_number(d.numeric) << ", \"printed\": " << json_number(d.printed)
         << ", \"resolved\": " << json_number(d.resolved) << "}";
    }
    os << "\n  ]";
  }
  if (!r.notes.empty()) {
    os << ",\n  \"notes\": [";
    for (std::size_t i = 0; i < r.notes.size(); ++i) os << (i ? ", " : "") << json_string(r.notes[i]);
    os << "]";
  }
  os << "\n}\n";
}

inline void write_csv(std::ostream& os, const VerificationReport& r) {
  os << "record,name,status,measured,reference,tolerance,degeneracy,detail\n";
  os << "param,omega,," << format_number(r.params.omega()) << ",,,,\n";
  os << "param,g1_squared,," << format_number(r.params.g1_squared()) << ",,,,\n";
  if (r.resolved_sho_offset) os << "resolved,sho_offset,," << format_number(*r.resolved_sho_offset) << ",,,,\n";
  if (r.resolved_radial_rule) os << "resolved,radial_rule,,,,,," << to_string(*r.resolved_radial_rule) << "\n";
  for (const auto& c : r.checks) {
    os << "check," << csv_field(c.name) << "," << (c.passed ? "pass" : "fail") << "," << format_number(c.measured)
       << "," << format_number(c.reference) << "," << format_number(c.tolerance) << ",,"
       << csv_field(std::string(to_string(c.kind)) + ": " + c.provenance) << "\n";
  }
  for (const auto& l : r.levels) {
    os << "level," << csv_field(l.label) << ",," << format_number(l.energy) << ",,," << l.degeneracy << ",\n";
  }
  for (const auto& d : r.discrepancies) {
    os << "discrepancy," << csv_field(d.quantity + " " + format_number(d.parameter) + " n=" + std::to_string(d.level))
       << ",," << format_number(d.numeric) << "," << format_number(d.resolved) << ",,,"
       << csv_field("printed=" + format_number(d.printed)) << "\n";
  }
  for (const auto& n : r.notes) os << "note,,,,,,," << csv_field(n) << "\n";
}

inline void write_spectrum_json(std::ostream& os, const SpectrumTable& t, const std::string& source) {
  os << "{\n";
  detail::json_params(os, t.params);
  os << ",\n  \"resolved\": {\"sho_offset\": " << json_number(t.offset) << ", \"source\": " << json_string(source)
     << ", \"sector_multiplicity\": " << t.sector_multiplicity << ", \"max_quanta\": " << t.cutoff << "}";
  os << ",\n  \"levels\": [";
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    const auto& l = t.levels[i];
    os << (i ? ",\n" : "\n") << "    {\"N\": " << l.members.front().total_quanta() << ", \"energy\": "
       << json_number(l.value) << ", \"degeneracy\": " << l.degeneracy << ", \"triples\": [";
    for (std::size_t k = 0; k < l.members.size(); ++k) {
      const auto& m = l.members[k];
      os << (k ? ", " : "") << "[" << m.n1 << ", " << m.n2 << ", " << m.n3 << "]";
    }
    os << "]}";
  }
  os << (t.levels.empty() ? "]" : "\n  ]") << "\n}\n";
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumTable& t) {
  os << "N,energy,degeneracy,triples\n";
  for (const auto& l : t.levels) {
    os << l.members.front().total_quanta() << "," << format_number(l.value) << "," << l.degeneracy << ","
       << csv_field(detail::triples_text(l.members)) << "\n";
  }
}

}  // namespace wolfes
