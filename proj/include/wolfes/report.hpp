#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wolfes/model.hpp"

namespace wolfes {

/// How a check compares measured against reference.
enum class CheckKind {
  kAgree,   // |measured - reference| <= tolerance
  kDiffer,  // |measured - reference| > tolerance
  kExceed,  // measured - reference > tolerance
};

inline const char* to_string(CheckKind k) {
  switch (k) {
    case CheckKind::kAgree: return "agree";
    case CheckKind::kDiffer: return "differ";
    case CheckKind::kExceed: return "exceed";
  }
  return "?";
}

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::kAgree;
  std::string provenance;
};

/// Numerical value next to the printed and resolved closed forms.
struct DiscrepancyRow {
  std::string quantity;  // "sho" or "radial"
  double parameter;      // g1^2 for sho, k^2 for radial
  unsigned level;
  double numeric;
  double printed;
  double resolved;
};

struct ReportLevel {
  double energy;
  unsigned degeneracy;
  std::string label;
};

struct VerificationReport {
  std::string title;
  ModelParams params;
  std::vector<Check> checks;
  std::optional<double> resolved_sho_offset;
  std::optional<RadialRule> resolved_radial_rule;
  std::vector<DiscrepancyRow> discrepancies;
  std::vector<ReportLevel> levels;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  Check& add(std::string name, double measured, double reference, double tolerance, CheckKind kind,
             std::string provenance) {
    const double diff = measured - reference;
    bool ok = false;
    switch (kind) {
      case CheckKind::kAgree: ok = std::abs(diff) <= tolerance; break;
      case CheckKind::kDiffer: ok = std::abs(diff) > tolerance; break;
      case CheckKind::kExceed: ok = diff > tolerance; break;
    }
    if (!std::isfinite(measured)) ok = false;
    checks.push_back({std::move(name), ok, measured, reference, tolerance, kind, std::move(provenance)});
    return checks.back();
  }

  Check& agree(std::string name, double measured, double reference, double tolerance, std::string provenance) {
    return add(std::move(name), measured, reference, tolerance, CheckKind::kAgree, std::move(provenance));
  }

  /// Appends checks, rows and notes of another report; resolved fields are taken if unset here.
  void merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    discrepancies.insert(discrepancies.end(), other.discrepancies.begin(), other.discrepancies.end());
    levels.insert(levels.end(), other.levels.begin(), other.levels.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    if (!resolved_sho_offset) resolved_sho_offset = other.resolved_sho_offset;
    if (!resolved_radial_rule) resolved_radial_rule = other.resolved_radial_rule;
  }
};

}  // namespace wolfes
