#pragma once

// Closed-form spectrum of the four-particle model after center-of-mass
// removal:
//
//   H_d = H_1 + H_2 + H_3,
//   H_1, H_3 : harmonic oscillators,   levels w (n + 1/2)
//   H_2      : singular oscillator with g1^2 / (6 X2^2), levels w (2n + c + delta)
//
// with delta = sqrt(1/4 + g1^2/3).  The additive constant c of the singular
// oscillator is kept open (1/2 as printed in the source, 1 from the
// half-line Dirichlet limit); the verifier decides.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "wolfes/errors.hpp"

namespace wolfes {

/// Physical couplings of the model.
class ModelParams {
 public:
  ModelParams() = default;
  ModelParams(double omega, double g1_squared) : omega_(omega), g1_squared_(g1_squared) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      throw InvalidArgument("omega must be positive and finite");
    }
    if (!(g1_squared >= 0.0) || !std::isfinite(g1_squared)) {
      throw InvalidArgument("g1_squared must be nonnegative and finite");
    }
  }

  double omega() const noexcept { return omega_; }
  double g1_squared() const noexcept { return g1_squared_; }

  ModelParams with_omega(double omega) const { return {omega, g1_squared_}; }
  ModelParams with_g1_squared(double g) const { return {omega_, g}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double omega_ = 1.0;
  double g1_squared_ = 0.0;
};

/// delta = sqrt(1/4 + g1^2/3); delta >= 1/2 with equality iff g1^2 = 0.
struct DerivedConstants {
  double delta;

  static DerivedConstants from(const ModelParams& p) {
    return {std::sqrt(0.25 + p.g1_squared() / 3.0)};
  }
};

inline double delta_of(const ModelParams& p) { return DerivedConstants::from(p).delta; }

/// Jacobi-route labels (n1, n2, n3); n2 is the singular-oscillator quantum number.
struct QuantumTriple {
  unsigned n1 = 0;
  unsigned n2 = 0;
  unsigned n3 = 0;

  unsigned total_quanta() const noexcept { return n1 + n3 + 2 * n2; }
  friend bool operator==(const QuantumTriple&, const QuantumTriple&) = default;
};

/// Spherical-route labels: radial n_r, theta channel l, phi channel m.
struct SphericalQuantum {
  unsigned n_r = 0;
  unsigned l = 0;
  unsigned m = 0;

  friend bool operator==(const SphericalQuantum&, const SphericalQuantum&) = default;
};

struct EnergyLevel {
  double value = 0.0;
  unsigned degeneracy = 0;
  std::vector<QuantumTriple> members;
};

struct SpectrumTable {
  std::vector<EnergyLevel> levels;
  ModelParams params;
  unsigned cutoff = 0;
  unsigned sector_multiplicity = 1;
  double offset = 1.0;
};

/// Singular-oscillator additive constant exactly as printed.
inline constexpr double kPrintedShoOffset = 0.5;
/// Additive constant forced by the g1^2 -> 0 half-line limit.
inline constexpr double kHalfLineShoOffset = 1.0;

/// Relative merge tolerance (times omega) for grouping degenerate closed forms.
inline constexpr double kLevelMergeTolerance = 1e-9;

inline double ho_energy(unsigned n, const ModelParams& p) {
  return p.omega() * (static_cast<double>(n) + 0.5);
}

/// w (2n + 1/2 + delta), the printed formula.
inline double sho_energy_published(unsigned n, const ModelParams& p) {
  return p.omega() * (2.0 * n + kPrintedShoOffset + delta_of(p));
}

inline void require_sho_offset(double offset) {
  if (offset != kPrintedShoOffset && offset != kHalfLineShoOffset) {
    throw InvalidArgument("singular-oscillator offset must be 1/2 or 1");
  }
}

inline double sho_energy_resolved(unsigned n, const ModelParams& p, double offset) {
  require_sho_offset(offset);
  return p.omega() * (2.0 * n + offset + delta_of(p));
}

inline double composite_energy(const QuantumTriple& t, const ModelParams& p, double offset) {
  return ho_energy(t.n1, p) + sho_energy_resolved(t.n2, p, offset) + ho_energy(t.n3, p);
}

/// Radial exponent rule linking the centrifugal coefficient k^2 to s.
enum class RadialRule {
  kPublished,  // s = (sqrt(k^2 + 1) - 1) / 2
  kCandidate,  // s (s + 1) = k^2
};

inline const char* to_string(RadialRule r) {
  return r == RadialRule::kPublished ? "published" : "candidate";
}

inline double radial_exponent(double k_squared, RadialRule rule) {
  if (!(k_squared >= 0.0)) throw InvalidArgument("k_squared must be nonnegative");
  const double scale = rule == RadialRule::kPublished ? 1.0 : 4.0;
  return 0.5 * (std::sqrt(scale * k_squared + 1.0) - 1.0);
}

inline double radial_energy(unsigned n, double k_squared, const ModelParams& p, RadialRule rule) {
  return p.omega() * (2.0 * n + radial_exponent(k_squared, rule) + 1.5);
}

inline double radial_energy_published(unsigned n, double k_squared, const ModelParams& p) {
  return radial_energy(n, k_squared, p, RadialRule::kPublished);
}

inline double radial_energy_candidate(unsigned n, double k_squared, const ModelParams& p) {
  return radial_energy(n, k_squared, p, RadialRule::kCandidate);
}

/// All levels with n1 + n3 + 2 n2 <= cutoff, merged by value and sorted.
/// Degeneracy counts members times sector_multiplicity.
inline SpectrumTable enumerate_spectrum(const ModelParams& p, unsigned cutoff, double offset,
                                        unsigned sector_multiplicity = 1) {
  require_sho_offset(offset);
  if (sector_multiplicity != 1 && sector_multiplicity != 2) {
    throw InvalidArgument("sector_multiplicity must be 1 or 2");
  }

  struct Entry {
    double value;
    QuantumTriple t;
  };
  std::vector<Entry> entries;
  for (unsigned total = 0; total <= cutoff; ++total) {
    for (unsigned n2 = 0; 2 * n2 <= total; ++n2) {
      for (unsigned n1 = 0; n1 <= total - 2 * n2; ++n1) {
        QuantumTriple t{n1, n2, total - 2 * n2 - n1};
        entries.push_back({composite_energy(t, p, offset), t});
      }
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.value < b.value; });

  SpectrumTable table;
  table.params = p;
  table.cutoff = cutoff;
  table.sector_multiplicity = sector_multiplicity;
  table.offset = offset;
  const double merge = kLevelMergeTolerance * p.omega();
  for (const auto& e : entries) {
    if (table.levels.empty() || std::abs(e.value - table.levels.back().value) > merge) {
      table.levels.push_back({e.value, 0, {}});
    }
    table.levels.back().members.push_back(e.t);
  }
  for (auto& level : table.levels) {
    level.degeneracy = static_cast<unsigned>(level.members.size()) * sector_multiplicity;
  }
  return table;
}

/// Energies flattened with multiplicity, ascending.
inline std::vector<double> expand_levels(const SpectrumTable& table) {
  std::vector<double> out;
  for (const auto& level : table.levels) out.insert(out.end(), level.degeneracy, level.value);
  return out;
}

/// H(w, g1) = w H(1, g1).
inline double scale_energy(double e_at_unit_omega, double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("omega must be positive");
  return omega * e_at_unit_omega;
}

/// dE/d(g1^2) of every singular-oscillator level: w / (6 delta).
inline double hf_derivative_closed_form(unsigned /*n2*/, const ModelParams& p) {
  return p.omega() / (6.0 * delta_of(p));
}

}  // namespace wolfes
