#pragma once

// Cross-validation of the closed-form spectrum against independent numerics:
// the Jacobi route (HO + SHO + HO channels), the chained spherical route
// (phi -> theta -> radial), direct 3D diagonalization, the Hellmann-Feynman
// derivative, and the claims of a g1-independent spectrum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wolfes/channels.hpp"
#include "wolfes/errors.hpp"
#include "wolfes/hd3d.hpp"
#include "wolfes/model.hpp"
#include "wolfes/report.hpp"

namespace wolfes {

inline constexpr double kDefaultTolerance = 1e-4;
inline constexpr double kAnchorTolerance = 1e-5;
inline constexpr double kDefault3dTolerance = 5e-3;

/// The g1^2 values a full resolution sweep must cover.
inline const std::vector<double>& standard_g1_sweep() {
  static const std::vector<double> sweep{0.0, 1.0, 3.0, 7.5};
  return sweep;
}

inline const std::vector<double>& standard_radial_probes() {
  static const std::vector<double> probes{2.0, 6.0};
  return probes;
}

namespace detail {

inline std::string label(const QuantumTriple& t) {
  return "(" + std::to_string(t.n1) + "," + std::to_string(t.n2) + "," + std::to_string(t.n3) + ")";
}

inline std::string label(const SphericalQuantum& q) {
  return "n=" + std::to_string(q.n_r) + ",l=" + std::to_string(q.l) + ",m=" + std::to_string(q.m);
}

inline std::string short_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct MultisetComparison {
  double worst = 0.0;
  std::string first_mismatch;
};

/// Pairs two ascending lists in order; names the first pair beyond tol.
inline MultisetComparison compare_sorted(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  MultisetComparison out;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > tol && out.first_mismatch.empty()) {
      out.first_mismatch = "entry " + std::to_string(i) + ": " + short_number(a[i]) + " vs " + short_number(b[i]);
    }
    out.worst = std::max(out.worst, d);
  }
  if (a.size() != b.size()) {
    out.worst = std::numeric_limits<double>::infinity();
    out.first_mismatch = "multiset sizes differ";
  }
  return out;
}

inline unsigned cutoff_for_count(std::size_t count) {
  unsigned cutoff = 0;
  std::size_t states = 0;
  while (true) {
    for (unsigned n2 = 0; 2 * n2 <= cutoff; ++n2) states += cutoff - 2 * n2 + 1;
    if (states >= count) return cutoff;
    ++cutoff;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Formula-constant resolution

struct Resolution {
  double sho_offset = kHalfLineShoOffset;
  RadialRule radial_rule = RadialRule::kCandidate;
  VerificationReport report;
};

/// Decides the singular-oscillator additive constant (1/2 or 1) and the
/// radial exponent rule by comparing the lowest `levels` numerical levels with
/// each candidate over the whole sweep. Throws ResolutionError unless exactly
/// one candidate of each kind matches within tol.
inline Resolution resolve_formula_offsets(const std::vector<ModelParams>& params_list,
                                          const GridSettings& grid = {}, double tol = kDefaultTolerance,
                                          const std::vector<double>& radial_probes = standard_radial_probes(),
                                          std::size_t levels = 6) {
  if (params_list.empty()) throw InvalidArgument("resolution needs at least one parameter set");

  Resolution res;
  VerificationReport& rep = res.report;
  rep.title = "resolve";
  rep.params = params_list.front();

  const double offsets[2] = {kPrintedShoOffset, kHalfLineShoOffset};
  const RadialRule rules[2] = {RadialRule::kPublished, RadialRule::kCandidate};
  double sho_residual[2] = {0.0, 0.0};
  double radial_residual[2] = {0.0, 0.0};

  struct ShoRun {
    ModelParams p;
    std::vector<double> numeric;
  };
  struct RadialRun {
    ModelParams p;
    double k2;
    std::vector<double> numeric;
  };
  std::vector<ShoRun> sho_runs;
  std::vector<RadialRun> radial_runs;

  for (const auto& p : params_list) {
    auto sho = solve_channel_extrapolated({ChannelKind::kSHO, 0.0}, p, grid, levels).extrapolated;
    for (int c = 0; c < 2; ++c) {
      for (std::size_t n = 0; n < levels; ++n) {
        const double f = sho_energy_resolved(static_cast<unsigned>(n), p, offsets[c]);
        sho_residual[c] = std::max(sho_residual[c], std::abs(sho[n] - f));
      }
    }
    sho_runs.push_back({p, std::move(sho)});
    // The radial channel does not involve g1^2.
    const bool omega_seen = std::any_of(radial_runs.begin(), radial_runs.end(),
                                        [&](const RadialRun& r) { return r.p.omega() == p.omega(); });
    if (omega_seen) continue;
    for (double k2 : radial_probes) {
      auto rad = solve_channel_extrapolated({ChannelKind::kRadial, k2}, p, grid, levels).extrapolated;
      for (int c = 0; c < 2; ++c) {
        for (std::size_t n = 0; n < levels; ++n) {
          const double f = radial_energy(static_cast<unsigned>(n), k2, p, rules[c]);
          radial_residual[c] = std::max(radial_residual[c], std::abs(rad[n] - f));
        }
      }
      radial_runs.push_back({p, k2, std::move(rad)});
    }
  }

  const bool sho_match[2] = {sho_residual[0] < tol, sho_residual[1] < tol};
  const bool radial_match[2] = {radial_residual[0] < tol, radial_residual[1] < tol};
  const int sho_count = sho_match[0] + sho_match[1];
  const int radial_count = radial_match[0] + radial_match[1];

  std::ostringstream table;
  table << "candidate                 max_residual\n"
        << "sho offset 1/2 (printed)  " << sho_residual[0] << "\n"
        << "sho offset 1              " << sho_residual[1] << "\n"
        << "radial published          " << radial_residual[0] << "\n"
        << "radial candidate          " << radial_residual[1] << "\n";
  if (sho_count != 1 || radial_count != 1) {
    const std::string why = (sho_count == 0 || radial_count == 0) ? "no candidate matches" : "ambiguous resolution";
    throw ResolutionError("formula resolution failed: " + why, table.str());
  }

  res.sho_offset = sho_match[0] ? offsets[0] : offsets[1];
  res.radial_rule = radial_match[0] ? rules[0] : rules[1];
  rep.resolved_sho_offset = res.sho_offset;
  rep.resolved_radial_rule = res.radial_rule;
  const int sho_pick = sho_match[0] ? 0 : 1;
  const int radial_pick = radial_match[0] ? 0 : 1;

  rep.agree("sho offset unique", sho_count, 1.0, 0.0, "exactly one of {1/2, 1} matches numerics");
  rep.agree("sho offset residual", sho_residual[sho_pick], 0.0, tol, "max |numeric - formula| over sweep");
  rep.add("printed sho formula discrepancy", sho_residual[0], 0.0, tol,
          sho_pick == 0 ? CheckKind::kAgree : CheckKind::kDiffer, "w(2n + 1/2 + delta) against numerics");
  rep.agree("radial rule unique", radial_count, 1.0, 0.0, "exactly one exponent rule matches numerics");
  rep.agree("radial rule residual", radial_residual[radial_pick], 0.0, tol, "max |numeric - formula| over probes");
  rep.add("printed radial formula discrepancy", radial_residual[0], 0.0, tol,
          radial_pick == 0 ? CheckKind::kAgree : CheckKind::kDiffer, "s = (sqrt(k^2 + 1) - 1)/2 against numerics");

  // Analytically forced anchors, in units of the first omega.
  const ModelParams anchor_p(params_list.front().omega(), 0.0);
  const double sho0 = solve_channel_extrapolated({ChannelKind::kSHO, 0.0}, anchor_p, grid, 1).extrapolated[0];
  rep.agree("anchor sho g1^2=0 ground", sho0, 1.5 * anchor_p.omega(), kAnchorTolerance,
            "half-line Dirichlet oscillator, w(2n + 3/2)");
  const double rad2 = solve_channel_extrapolated({ChannelKind::kRadial, 2.0}, anchor_p, grid, 1).extrapolated[0];
  rep.agree("anchor radial k^2=2 ground", rad2, 2.5 * anchor_p.omega(), kAnchorTolerance,
            "l = 1 isotropic oscillator, w(2n + l + 3/2)");

  for (const auto& run : sho_runs) {
    for (std::size_t n = 0; n < levels; ++n) {
      const auto un = static_cast<unsigned>(n);
      rep.discrepancies.push_back({"sho", run.p.g1_squared(), un, run.numeric[n], sho_energy_published(un, run.p),
                                   sho_energy_resolved(un, run.p, res.sho_offset)});
    }
  }
  for (const auto& run : radial_runs) {
    for (std::size_t n = 0; n < levels; ++n) {
      const auto un = static_cast<unsigned>(n);
      rep.discrepancies.push_back({"radial", run.k2, un, run.numeric[n], radial_energy_published(un, run.k2, run.p),
                                   radial_energy(un, run.k2, run.p, res.radial_rule)});
    }
  }

  std::set<double> covered;
  for (const auto& p : params_list) covered.insert(p.g1_squared());
  for (double g : standard_g1_sweep()) {
    if (!covered.count(g)) {
      rep.notes.push_back("warning: resolution used a reduced sweep (standard g1^2 values 0, 1, 3, 7.5 not all present)");
      break;
    }
  }
  return res;
}

inline std::vector<ModelParams> standard_sweep_params(double omega) {
  std::vector<ModelParams> out;
  for (double g : standard_g1_sweep()) out.emplace_back(omega, g);
  return out;
}

// ---------------------------------------------------------------------------
// Jacobi route

struct JacobiNumerics {
  std::vector<double> ho;   // extrapolated HO levels
  std::vector<double> sho;  // extrapolated SHO levels
};

inline JacobiNumerics jacobi_channel_levels(const ModelParams& p, unsigned cutoff, const GridSettings& grid) {
  JacobiNumerics out;
  out.ho = solve_channel_extrapolated({ChannelKind::kHO, 0.0}, p, grid, cutoff + 1).extrapolated;
  out.sho = solve_channel_extrapolated({ChannelKind::kSHO, 0.0}, p, grid, cutoff / 2 + 1).extrapolated;
  return out;
}

/// Sorted numerical E_{n1} + E_{n2} + E_{n3} over all triples with N <= cutoff.
inline std::vector<double> jacobi_numeric_spectrum(const ModelParams& p, unsigned cutoff, const GridSettings& grid) {
  const auto lv = jacobi_channel_levels(p, cutoff, grid);
  std::vector<double> e;
  for (unsigned total = 0; total <= cutoff; ++total) {
    for (unsigned n2 = 0; 2 * n2 <= total; ++n2) {
      for (unsigned n1 = 0; n1 <= total - 2 * n2; ++n1) {
        e.push_back(lv.ho[n1] + lv.sho[n2] + lv.ho[total - 2 * n2 - n1]);
      }
    }
  }
  std::sort(e.begin(), e.end());
  return e;
}

inline VerificationReport verify_jacobi_route(const ModelParams& p, unsigned cutoff, double tol, double offset,
                                              const GridSettings& grid = {}) {
  VerificationReport rep;
  rep.title = "jacobi";
  rep.params = p;
  rep.resolved_sho_offset = offset;

  const auto lv = jacobi_channel_levels(p, cutoff, grid);
  const SpectrumTable table = enumerate_spectrum(p, cutoff, offset, 1);

  std::vector<double> numeric_all;
  for (const auto& level : table.levels) {
    double worst_value = level.value;
    std::string worst_label;
    for (const auto& t : level.members) {
      const double e = lv.ho[t.n1] + lv.sho[t.n2] + lv.ho[t.n3];
      numeric_all.push_back(e);
      if (worst_label.empty() || std::abs(e - level.value) > std::abs(worst_value - level.value)) {
        worst_value = e;
        worst_label = detail::label(t);
      }
    }
    const unsigned total = level.members.front().total_quanta();
    rep.agree("jacobi level N=" + std::to_string(total), worst_value, level.value, tol,
              "worst member " + worst_label + " of " + std::to_string(level.members.size()) +
                  "; HO + SHO + HO numerics vs closed form");
    rep.levels.push_back({level.value, level.degeneracy, "N=" + std::to_string(total) + " " + worst_label});
  }

  std::sort(numeric_all.begin(), numeric_all.end());
  for (const auto& level : table.levels) {
    const auto count = std::count_if(numeric_all.begin(), numeric_all.end(),
                                     [&](double e) { return std::abs(e - level.value) <= tol; });
    rep.agree("jacobi degeneracy N=" + std::to_string(level.members.front().total_quanta()),
              static_cast<double>(count), level.degeneracy, 0.0, "numeric triples within tol of the level");
  }
  const auto cmp = detail::compare_sorted(numeric_all, expand_levels(table), tol);
  rep.agree("jacobi multiset", cmp.worst, 0.0, tol,
            cmp.first_mismatch.empty() ? "all levels paired" : "first unpaired " + cmp.first_mismatch);
  return rep;
}

// ---------------------------------------------------------------------------
// Spherical route

struct SphericalRanges {
  unsigned m_max = 4;
  unsigned l_max = 4;
  unsigned n_max = 2;
};

struct SphericalState {
  SphericalQuantum q;
  double energy;
};

struct SphericalChain {
  std::vector<double> f_squared;                // f_m^2
  std::vector<std::vector<double>> k_squared;   // [m][l]
  std::vector<SphericalState> states;           // ascending energy
};

/// phi numerics -> f_m^2 -> theta numerics -> k_lm^2 -> radial numerics -> E_nlm,
/// every stage Richardson-extrapolated.
inline SphericalChain spherical_chain(const ModelParams& p, const SphericalRanges& r, const GridSettings& grid) {
  SphericalChain out;
  out.f_squared = solve_channel_extrapolated({ChannelKind::kAngularPhi, p.g1_squared() / 3.0}, p, grid, r.m_max + 1)
                      .extrapolated;
  for (unsigned m = 0; m <= r.m_max; ++m) {
    out.k_squared.push_back(
        solve_channel_extrapolated({ChannelKind::kAngularTheta, out.f_squared[m]}, p, grid, r.l_max + 1).extrapolated);
    for (unsigned l = 0; l <= r.l_max; ++l) {
      const auto e =
          solve_channel_extrapolated({ChannelKind::kRadial, out.k_squared[m][l]}, p, grid, r.n_max + 1).extrapolated;
      for (unsigned n = 0; n <= r.n_max; ++n) out.states.push_back({{n, l, m}, e[n]});
    }
  }
  std::stable_sort(out.states.begin(), out.states.end(),
                   [](const SphericalState& a, const SphericalState& b) { return a.energy < b.energy; });
  return out;
}

inline VerificationReport verify_spherical_route(const ModelParams& p, const SphericalRanges& ranges, double tol,
                                                 double offset, std::size_t count = 10,
                                                 const GridSettings& grid = {}) {
  VerificationReport rep;
  rep.title = "spherical";
  rep.params = p;
  rep.resolved_sho_offset = offset;

  // One extra quantum in every direction bounds what the ranges leave out.
  const SphericalRanges wider{ranges.m_max + 1, ranges.l_max + 1, ranges.n_max + 1};
  const SphericalChain chain = spherical_chain(p, wider, grid);
  std::vector<SphericalState> kept;
  double excluded_min = std::numeric_limits<double>::infinity();
  for (const auto& s : chain.states) {
    if (s.q.m <= ranges.m_max && s.q.l <= ranges.l_max && s.q.n_r <= ranges.n_max) {
      kept.push_back(s);
    } else {
      excluded_min = std::min(excluded_min, s.energy);
    }
  }
  if (kept.size() < count) throw InvalidArgument("spherical ranges hold fewer states than requested");
  kept.resize(count);

  std::vector<double> sph;
  for (const auto& s : kept) sph.push_back(s.energy);
  rep.add("spherical ranges complete", excluded_min, sph.back(), tol, CheckKind::kExceed,
          "lowest state outside (m_max, l_max, n_max) lies above the kept set");

  const unsigned cutoff = detail::cutoff_for_count(count);
  std::vector<double> jac = jacobi_numeric_spectrum(p, cutoff, grid);
  jac.resize(count);
  std::vector<double> closed = expand_levels(enumerate_spectrum(p, cutoff, offset, 1));
  closed.resize(count);

  const auto vs_numeric = detail::compare_sorted(sph, jac, tol);
  rep.agree("spherical vs jacobi numerics", vs_numeric.worst, 0.0, tol,
            vs_numeric.first_mismatch.empty() ? "lowest " + std::to_string(count) + " paired in order"
                                              : "first unpaired " + vs_numeric.first_mismatch);
  const auto vs_closed = detail::compare_sorted(sph, closed, tol);
  rep.agree("spherical vs closed form", vs_closed.worst, 0.0, tol,
            vs_closed.first_mismatch.empty() ? "lowest " + std::to_string(count) + " paired in order"
                                             : "first unpaired " + vs_closed.first_mismatch);
  rep.agree("spherical ground", sph.front(), composite_energy({0, 0, 0}, p, offset), tol,
            "chain ground vs composite (0,0,0)");

  std::ostringstream f2;
  f2 << "f_m^2:";
  for (unsigned m = 0; m <= ranges.m_max; ++m) f2 << " " << detail::short_number(chain.f_squared[m]);
  rep.notes.push_back(f2.str());
  for (const auto& s : kept) {
    const unsigned quanta = 2 * s.q.n_r + s.q.l + s.q.m;
    rep.levels.push_back({s.energy, 1, detail::label(s.q) + " -> N=" + std::to_string(quanta)});
    rep.notes.push_back("correspondence " + detail::label(s.q) + " -> Jacobi N=" + std::to_string(quanta));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Hellmann-Feynman

inline double default_hf_step(const ModelParams& p) { return 1e-3 * std::max(1.0, p.g1_squared()); }

inline double sho_level_extrapolated(const ModelParams& p, unsigned n2, const GridSettings& grid) {
  return solve_channel_extrapolated({ChannelKind::kSHO, 0.0}, p, grid, n2 + 1).extrapolated[n2];
}

struct HfValues {
  double finite_difference;
  double finite_difference_half_step;
  double expectation;
  double closed_form;
};

inline HfValues hellmann_feynman_values(const ModelParams& p, unsigned n2, double step, const GridSettings& grid) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  if (p.g1_squared() - step < 0.0) throw InvalidArgument("g1^2 - step must be nonnegative");
  auto central = [&](double d) {
    const double up = sho_level_extrapolated(p.with_g1_squared(p.g1_squared() + d), n2, grid);
    const double down = sho_level_extrapolated(p.with_g1_squared(p.g1_squared() - d), n2, grid);
    return (up - down) / (2.0 * d);
  };
  HfValues v{};
  v.finite_difference = central(step);
  v.finite_difference_half_step = central(0.5 * step);

  const Grid1D base = grid.grid_for(ChannelKind::kSHO, p);
  auto observe = [&](const Grid1D& g) {
    const auto r = solve_channel({ChannelKind::kSHO, 0.0}, p, g, n2 + 1, true);
    return expectation(r.eigenvectors[n2], [](double x) { return 1.0 / (6.0 * x * x); }, g);
  };
  v.expectation = richardson(observe(base), observe(base.refined()));
  v.closed_form = hf_derivative_closed_form(n2, p);
  return v;
}

inline VerificationReport hellmann_feynman_check(const ModelParams& p, unsigned n2, double step, double tol,
                                                 const GridSettings& grid = {}) {
  if (step <= 0.0) step = default_hf_step(p);
  const HfValues v = hellmann_feynman_values(p, n2, step, grid);
  VerificationReport rep;
  rep.title = "hf-check";
  rep.params = p;
  const std::string tag = " n2=" + std::to_string(n2);
  rep.agree("hf fd vs closed" + tag, v.finite_difference, v.closed_form, tol,
            "central difference of SHO levels in g1^2 vs w/(6 delta)");
  rep.agree("hf expectation vs closed" + tag, v.expectation, v.closed_form, tol,
            "<1/(6 X2^2)> from the SHO eigenvector vs w/(6 delta)");
  rep.agree("hf fd vs expectation" + tag, v.finite_difference, v.expectation, tol,
            "the two independent numerics");
  rep.agree("hf half step" + tag, v.finite_difference_half_step, v.finite_difference, tol,
            "central difference at step/2; O(step^2) differentiation error");
  rep.add("hf derivative positive" + tag, v.finite_difference, 0.0, 0.0, CheckKind::kExceed,
          "dE/dg1^2 > 0 forbids a g1-independent spectrum");
  rep.add("hf expectation positive" + tag, v.expectation, 0.0, 0.0, CheckKind::kExceed,
          "<1/(6 X2^2)> > 0");
  return rep;
}

// ---------------------------------------------------------------------------
// Audit of the g1-independent claims

inline VerificationReport claims_audit(const ModelParams& p, double offset, double tol = kDefaultTolerance,
                                   const GridSettings& grid = {}) {
  VerificationReport rep;
  rep.title = "audit";
  rep.params = p;
  rep.resolved_sho_offset = offset;

  const double g = p.g1_squared();
  const ModelParams other = p.with_g1_squared(g != 1.0 ? 1.0 : 3.0);
  auto ground = [&](const ModelParams& q) {
    const double ho = solve_channel_extrapolated({ChannelKind::kHO, 0.0}, q, grid, 1).extrapolated[0];
    return 2.0 * ho + sho_level_extrapolated(q, 0, grid);
  };
  const double e_here = ground(p);
  const double e_other = ground(other);
  const std::string pair = "g1^2=" + detail::short_number(g) + " vs " + detail::short_number(other.g1_squared());
  rep.add("claim (a) spectrum independent of g1: refuted", std::abs(e_here - e_other), 0.0, tol, CheckKind::kExceed,
          "numeric ground energies differ, " + pair);
  rep.agree("claim (a) g1-dependence matches closed form", e_here - e_other,
            composite_energy({0, 0, 0}, p, offset) - composite_energy({0, 0, 0}, other, offset), tol,
            "w (delta(g) - delta(g')), " + pair);
  rep.add("claim (a) radial formula w(2n + l + 3/2) at n=l=0: refuted", e_here, 1.5 * p.omega(), tol,
          CheckKind::kDiffer, "numeric ground vs g1-independent value");

  const auto f2 = solve_channel_extrapolated({ChannelKind::kAngularPhi, g / 3.0}, p, grid, 2).extrapolated;
  rep.add("claim (b) all f_m^2 equal: refuted", f2[1] - f2[0], 0.0, 1.0, CheckKind::kExceed,
          "phi-channel numerics, f_1^2 - f_0^2 separated by more than 1");
  rep.add("claim (b) f_m^2 = g1^2/3 + 1/4: refuted", f2[0], g / 3.0 + 0.25, tol, CheckKind::kDiffer,
          "phi-channel numerics, lowest f_m^2");

  const auto k2 = solve_channel_extrapolated({ChannelKind::kAngularTheta, f2[0]}, p, grid, 2).extrapolated;
  rep.add("claim (c) k_00^2 = l(l+1) = 0: refuted", k2[0], 0.0, 1.0, CheckKind::kExceed,
          "theta-channel numerics fed by f_0^2");
  rep.add("claim (c) k_10^2 = l(l+1) = 2: refuted", k2[1], 2.0, 1.0, CheckKind::kDiffer,
          "theta-channel numerics fed by f_0^2");

  rep.notes.push_back("f_0^2=" + detail::short_number(f2[0]) + " f_1^2=" + detail::short_number(f2[1]) +
                      " k_00^2=" + detail::short_number(k2[0]) + " k_10^2=" + detail::short_number(k2[1]));
  return rep;
}

// ---------------------------------------------------------------------------
// Direct 3D diagonalization

struct Grid3dSettings {
  std::size_t n_per_axis = 61;
  double extent = 7.0;  // cube side at w = 1
};

inline VerificationReport verify_3d(const ModelParams& p, std::size_t k, double tol, double offset,
                                    const Grid3dSettings& grid = {}, const Hd3dOptions& opts = {}) {
  VerificationReport rep;
  rep.title = "3d";
  rep.params = p;
  rep.resolved_sho_offset = offset;

  const Hd3dResult r = solve_hd_3d(p, grid.n_per_axis, grid.extent, k, opts);
  std::vector<double> expected = expand_levels(enumerate_spectrum(p, detail::cutoff_for_count(k), offset, 2));
  expected.resize(r.levels.size());

  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    rep.agree("3d level " + std::to_string(i), r.levels[i].value, expected[i], tol,
              "sector " + r.levels[i].sector.label() + " vs sector-doubled closed form");
    rep.levels.push_back({r.levels[i].value, 1, r.levels[i].sector.label()});
  }

  // Mirror pair: the lowest state of each X2 sector.
  double even = std::numeric_limits<double>::quiet_NaN();
  double odd = std::numeric_limits<double>::quiet_NaN();
  for (const auto& l : r.levels) {
    if (l.sector.x2_parity > 0 && std::isnan(even)) even = l.value;
    if (l.sector.x2_parity < 0 && std::isnan(odd)) odd = l.value;
  }
  if (k >= 2) {
    rep.agree("3d ground mirror pair splitting", std::abs(even - odd), 0.0, tol,
              "lowest X2-even and X2-odd states are near-degenerate");
  }
  rep.notes.push_back("grid " + std::to_string(r.n_axis) + "x" + std::to_string(r.n_x2) + "x" +
                      std::to_string(r.n_axis) + ", h=" + detail::short_number(r.spacing) +
                      ", half-width " + detail::short_number(r.half_width) +
                      ", max residual " + detail::short_number(r.residual_bound));
  return rep;
}

}  // namespace wolfes
