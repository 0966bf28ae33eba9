#pragma once

// Batch command-line surface. Exit codes: 0 pass, 1 verification failure,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "wolfes/config.hpp"
#include "wolfes/errors.hpp"
#include "wolfes/io.hpp"
#include "wolfes/verify.hpp"

namespace wolfes {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

namespace cli {

inline GridSettings grid_settings(const RunConfig& c) { return {c.grid_points, c.domain_extent}; }

inline void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::trunc);
  if (!f) throw InvalidArgument("cannot write output file " + c.out);
  f << text;
}

inline std::string render(const RunConfig& c, const VerificationReport& r) {
  std::ostringstream os;
  if (c.format == OutputFormat::kJson) write_json(os, r);
  else write_csv(os, r);
  return os.str();
}

/// Resolved constants from the state file, or an in-process resolution over the sweep.
inline ResolvedState resolved_constants(const RunConfig& c, VerificationReport& into, std::ostream& err) {
  if (auto s = read_state(c.resolved_state_path())) {
    into.notes.push_back("resolved constants read from " + c.resolved_state_path());
    return *s;
  }
  std::vector<ModelParams> list;
  for (double g : c.sweep) list.emplace_back(c.omega, g);
  Resolution res = resolve_formula_offsets(list, grid_settings(c), kDefaultTolerance);
  err << "note: no state file at " << c.resolved_state_path() << "; resolved formula constants in-process\n";
  into.merge(res.report);
  return {res.sho_offset, res.radial_rule};
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  double offset = kPrintedShoOffset;
  std::string source = "published-fallback";
  if (auto s = read_state(c.resolved_state_path())) {
    offset = s->sho_offset;
    source = "state-file";
  } else {
    err << "WARNING: formula constants have not been resolved (run `wolfes resolve`);\n"
        << "WARNING: using the printed singular-oscillator constant 1/2.\n";
  }
  const SpectrumTable t = enumerate_spectrum(c.params(), c.max_quanta, offset, c.sector_multiplicity);
  std::ostringstream os;
  if (c.format == OutputFormat::kJson) write_spectrum_json(os, t, source);
  else write_spectrum_csv(os, t);
  emit(c, os.str(), out);
  return kExitPass;
}

inline int cmd_verify(const RunConfig& c, const std::string& which, std::ostream& out, std::ostream& err) {
  VerificationReport rep;
  rep.title = "verify " + which;
  rep.params = c.params();
  const ResolvedState rs = resolved_constants(c, rep, err);
  rep.resolved_sho_offset = rs.sho_offset;
  rep.resolved_radial_rule = rs.radial_rule;
  const ModelParams p = c.params();
  const GridSettings grid = grid_settings(c);

  try {
    if (which == "jacobi" || which == "all") {
      rep.merge(verify_jacobi_route(p, c.max_quanta, c.tol, rs.sho_offset, grid));
    }
    if (which == "spherical" || which == "all") {
      rep.merge(verify_spherical_route(p, SphericalRanges{}, c.tol, rs.sho_offset, 10, grid));
    }
    if (which == "3d" || which == "all") {
      rep.merge(verify_3d(p, c.k_3d, c.tol_3d, rs.sho_offset, {c.n_per_axis_3d(), c.extent_3d}));
    }
  } catch (const ConvergenceFailure& e) {
    rep.add("solver convergence", e.residual(), 0.0, 0.0, CheckKind::kAgree, e.what());
  }
  emit(c, render(c, rep), out);
  return rep.passed() ? kExitPass : kExitFail;
}

inline int cmd_hf_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (!(c.g1_squared > 0.0)) {
    err << "error: hf-check needs g1^2 > 0 so that the central difference stays at g1^2 - step >= 0\n";
    return kExitUsage;
  }
  VerificationReport rep;
  rep.title = "hf-check";
  rep.params = c.params();
  for (unsigned n2 = 0; n2 <= 2; ++n2) {
    rep.merge(hellmann_feynman_check(c.params(), n2, 0.0, c.tol, grid_settings(c)));
  }
  emit(c, render(c, rep), out);
  return rep.passed() ? kExitPass : kExitFail;
}

inline int cmd_resolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<ModelParams> list;
  for (double g : c.sweep) list.emplace_back(c.omega, g);
  Resolution res;
  try {
    res = resolve_formula_offsets(list, grid_settings(c), c.tol);
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << "\n" << e.table();
    return kExitFail;
  }
  for (const auto& n : res.report.notes) err << n << "\n";
  write_state(c.resolved_state_path(), {res.sho_offset, res.radial_rule});
  res.report.notes.push_back("state written to " + c.resolved_state_path());
  emit(c, render(c, res.report), out);
  return res.report.passed() ? kExitPass : kExitFail;
}

inline int cmd_audit(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerificationReport rep;
  rep.title = "audit";
  rep.params = c.params();
  VerificationReport scratch;
  const ResolvedState rs = resolved_constants(c, scratch, err);
  rep = claims_audit(c.params(), rs.sho_offset, c.tol, grid_settings(c));
  rep.resolved_radial_rule = rs.radial_rule;
  emit(c, render(c, rep), out);
  return kExitPass;
}

}  // namespace cli

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Four-particle model with two- and three-particle interactions: spectra and verification"};
  app.name("wolfes");
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path, format = "json";
  auto* o_config = app.add_option("--config", config_path, "key = value configuration file");
  auto* o_omega = app.add_option("--omega", flags.omega, "oscillator frequency (> 0)");
  auto* o_g = app.add_option("--g1sq", flags.g1_squared, "Wolfes coupling g1^2 (>= 0)");
  auto* o_quanta = app.add_option("--max-quanta", flags.max_quanta, "largest total quanta n1 + n3 + 2 n2");
  auto* o_points = app.add_option("--grid-points", flags.grid_points, "interior nodes per 1D grid (per axis in 3d when <= 81)");
  auto* o_extent = app.add_option("--domain-extent", flags.domain_extent, "HO half-width at omega = 1");
  auto* o_tol = app.add_option("--tol", flags.tol, "agreement tolerance for the 1D checks");
  auto* o_sector = app.add_option("--sector-mult", flags.sector_multiplicity, "mirror-sector multiplicity (1 or 2)");
  auto* o_format = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_out = app.add_option("--out", flags.out, "write output here instead of standard output");

  auto* spectrum = app.add_subcommand("spectrum", "closed-form spectrum with degeneracies");
  auto* verify = app.add_subcommand("verify", "cross-validate the solution routes");
  std::string which = "all";
  verify->add_option("which", which, "jacobi | spherical | 3d | all")
      ->check(CLI::IsMember({"jacobi", "spherical", "3d", "all"}));
  auto* hf = app.add_subcommand("hf-check", "Hellmann-Feynman derivative, three ways");
  auto* resolve = app.add_subcommand("resolve", "fix the open formula constants numerically");
  auto* audit = app.add_subcommand("audit", "findings on the g1-independent spectrum claims");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig c;
    if (o_config->count()) c = load_config_file(config_path);
    if (o_omega->count()) c.omega = flags.omega;
    if (o_g->count()) c.g1_squared = flags.g1_squared;
    if (o_quanta->count()) c.max_quanta = flags.max_quanta;
    if (o_points->count()) c.grid_points = flags.grid_points;
    if (o_extent->count()) c.domain_extent = flags.domain_extent;
    if (o_tol->count()) c.tol = flags.tol;
    if (o_sector->count()) c.sector_multiplicity = flags.sector_multiplicity;
    if (o_format->count()) c.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    if (o_out->count()) c.out = flags.out;
    c.validate();

    if (*spectrum) return cli::cmd_spectrum(c, out, err);
    if (*verify) return cli::cmd_verify(c, which, out, err);
    if (*hf) return cli::cmd_hf_check(c, out, err);
    if (*resolve) return cli::cmd_resolve(c, out, err);
    if (*audit) return cli::cmd_audit(c, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << "\n" << e.table();
    return kExitFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"wolfes"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wolfes
