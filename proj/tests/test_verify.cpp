#include <catch_amalgamated.hpp>

#include <cmath>

#include "wolfes/verify.hpp"

using namespace wolfes;
using Catch::Approx;

namespace {

bool all_passed(const VerificationReport& r) {
  for (const auto& c : r.checks) {
    UNSCOPED_INFO(c.name << ": measured " << c.measured << " reference " << c.reference << " tol " << c.tolerance
                         << (c.passed ? " pass" : " FAIL"));
  }
  return r.passed();
}

}  // namespace

TEST_CASE("report check kinds", "[verify]") {
  VerificationReport r;
  CHECK(r.add("a", 1.0, 1.05, 0.1, CheckKind::kAgree, "").passed);
  CHECK_FALSE(r.add("b", 1.0, 1.05, 0.01, CheckKind::kAgree, "").passed);
  CHECK(r.add("c", 1.0, 2.0, 0.5, CheckKind::kDiffer, "").passed);
  CHECK(r.add("d", 3.0, 1.0, 1.0, CheckKind::kExceed, "").passed);
  CHECK_FALSE(r.add("e", 1.5, 1.0, 1.0, CheckKind::kExceed, "").passed);
  CHECK_FALSE(r.add("f", std::nan(""), 0.0, 1.0, CheckKind::kDiffer, "").passed);
  CHECK_FALSE(r.passed());
  REQUIRE(r.find("c") != nullptr);
  CHECK(r.find("zzz") == nullptr);
}

TEST_CASE("sorted comparison names the first mismatch", "[verify]") {
  auto c = detail::compare_sorted({1.0, 2.0, 3.0}, {1.0, 2.5, 3.5}, 0.1);
  CHECK(c.worst == Approx(0.5));
  CHECK(c.first_mismatch.find("entry 1") != std::string::npos);
  c = detail::compare_sorted({1.0, 2.0}, {1.0, 2.0, 3.0}, 0.1);
  CHECK(std::isinf(c.worst));
  c = detail::compare_sorted({1.0, 2.0}, {1.0, 2.0}, 0.1);
  CHECK(c.first_mismatch.empty());
  CHECK(detail::cutoff_for_count(1) == 0);
  CHECK(detail::cutoff_for_count(3) == 1);
  CHECK(detail::cutoff_for_count(10) == 3);
}

TEST_CASE("formula resolution over the standard sweep", "[verify]") {
  const Resolution res = resolve_formula_offsets(standard_sweep_params(1.0));
  CHECK(res.sho_offset == kHalfLineShoOffset);
  CHECK(res.radial_rule == RadialRule::kCandidate);
  CHECK(all_passed(res.report));
  REQUIRE(res.report.find("anchor sho g1^2=0 ground") != nullptr);
  CHECK(res.report.find("anchor sho g1^2=0 ground")->measured == Approx(1.5).margin(1e-5));
  CHECK(res.report.find("anchor radial k^2=2 ground")->measured == Approx(2.5).margin(1e-5));
  CHECK(res.report.find("sho offset residual")->measured < 1e-4);
  CHECK(res.report.find("radial rule residual")->measured < 1e-4);
  // Printed forms are off by a full half quantum for the SHO.
  CHECK(res.report.find("printed sho formula discrepancy")->measured == Approx(0.5).margin(1e-3));

  std::size_t sho_rows = 0, radial_rows = 0;
  for (const auto& d : res.report.discrepancies) {
    (d.quantity == "sho" ? sho_rows : radial_rows)++;
    CHECK(std::abs(d.numeric - d.resolved) < 1e-4);
    CHECK(std::abs(d.numeric - d.printed) > 1e-2);
  }
  CHECK(sho_rows == 4 * 6);
  CHECK(radial_rows == 2 * 6);
  for (const auto& n : res.report.notes) CHECK(n.find("reduced sweep") == std::string::npos);
}

TEST_CASE("resolution is identical for every single coupling and for omega = 2", "[verify]") {
  for (double g : standard_g1_sweep()) {
    const Resolution r = resolve_formula_offsets({ModelParams(1.0, g)});
    CHECK(r.sho_offset == kHalfLineShoOffset);
    CHECK(r.radial_rule == RadialRule::kCandidate);
    bool warned = false;
    for (const auto& n : r.report.notes) warned |= n.find("reduced sweep") != std::string::npos;
    CHECK(warned);
  }
  const Resolution two = resolve_formula_offsets(standard_sweep_params(2.0), {}, 2 * kDefaultTolerance);
  CHECK(two.sho_offset == kHalfLineShoOffset);
  CHECK(two.radial_rule == RadialRule::kCandidate);
}

TEST_CASE("resolution failure reports the residual table", "[verify]") {
  try {
    resolve_formula_offsets(standard_sweep_params(1.0), GridSettings{101, 12.0});
    FAIL("expected a resolution error on a coarse grid");
  } catch (const ResolutionError& e) {
    CHECK(e.table().find("sho offset 1") != std::string::npos);
    CHECK(e.table().find("radial candidate") != std::string::npos);
  }
  CHECK_THROWS_AS(resolve_formula_offsets({}), InvalidArgument);
}

TEST_CASE("Jacobi route", "[verify]") {
  const auto r = verify_jacobi_route({1.0, 3.0}, 4, 1e-4, kHalfLineShoOffset);
  CHECK(all_passed(r));
  REQUIRE(r.levels.size() == 5);
  const unsigned deg[] = {1, 2, 4, 6, 9};
  for (std::size_t i = 0; i < 5; ++i) CHECK(r.levels[i].degeneracy == deg[i]);

  const auto two = verify_jacobi_route({2.0, 3.0}, 4, 2e-4, kHalfLineShoOffset);
  CHECK(all_passed(two));
  for (std::size_t i = 0; i < 5; ++i) CHECK(two.levels[i].energy == 2.0 * r.levels[i].energy);

  const auto zero = verify_jacobi_route({1.0, 0.0}, 2, 1e-4, kHalfLineShoOffset);
  CHECK(all_passed(zero));
  CHECK(zero.levels[0].energy == Approx(2.5));

  // The printed offset fails and the failing entry names the triple.
  const auto wrong = verify_jacobi_route({1.0, 3.0}, 2, 1e-4, kPrintedShoOffset);
  CHECK_FALSE(wrong.passed());
  const Check* c = wrong.find("jacobi level N=0");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  CHECK(c->provenance.find("(0,0,0)") != std::string::npos);

  CHECK_FALSE(verify_jacobi_route({1.0, 3.0}, 4, 1e-12, kHalfLineShoOffset).passed());
}

TEST_CASE("spherical route", "[verify]") {
  const auto r = verify_spherical_route({1.0, 3.0}, SphericalRanges{}, 1e-4, kHalfLineShoOffset);
  CHECK(all_passed(r));
  CHECK(r.find("spherical ground")->measured == Approx(2.0 + std::sqrt(5.0) / 2.0).margin(1e-4));
  REQUIRE(r.levels.size() == 10);
  for (const auto& l : r.levels) CHECK(l.label.find("-> N=") != std::string::npos);

  // Forced chain at zero coupling: f_0^2 = 1 -> k_00^2 = 2 -> E = 2.5.
  const auto chain = spherical_chain({1.0, 0.0}, SphericalRanges{1, 1, 0}, GridSettings{});
  CHECK(chain.f_squared[0] == Approx(1.0).margin(1e-5));
  CHECK(chain.k_squared[0][0] == Approx(2.0).margin(1e-5));
  CHECK(chain.states.front().energy == Approx(2.5).margin(1e-5));

  const auto two = verify_spherical_route({2.0, 3.0}, SphericalRanges{}, 2e-4, kHalfLineShoOffset);
  CHECK(all_passed(two));
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(two.levels[i].energy - 2.0 * r.levels[i].energy) < 2e-4);
}

TEST_CASE("Hellmann-Feynman three ways", "[verify]") {
  for (double g : {1.0, 3.0, 7.5}) {
    for (unsigned n2 = 0; n2 <= 2; ++n2) {
      const ModelParams p(1.0, g);
      const auto r = hellmann_feynman_check(p, n2, 0.0, 1e-4);
      INFO("g1^2=" << g << " n2=" << n2);
      CHECK(all_passed(r));
      const auto v = hellmann_feynman_values(p, n2, default_hf_step(p), GridSettings{});
      CHECK(v.finite_difference > 0.0);
      CHECK(v.expectation > 0.0);
      CHECK(v.closed_form == Approx(1.0 / (6.0 * std::sqrt(0.25 + g / 3.0))));
    }
  }
  const auto v1 = hellmann_feynman_values({1.0, 1.0}, 0, 1e-3, GridSettings{});
  CHECK(v1.expectation == Approx(0.218218).margin(1e-4));
  const auto v3 = hellmann_feynman_values({1.0, 3.0}, 0, 3e-3, GridSettings{});
  CHECK(v3.expectation == Approx(0.149071).margin(1e-4));
  CHECK(v3.finite_difference == Approx(0.149071).margin(1e-4));
  CHECK_THROWS_AS(hellmann_feynman_values({1.0, 0.0}, 0, 1e-3, GridSettings{}), InvalidArgument);
  CHECK(default_hf_step({1.0, 7.5}) == Approx(7.5e-3));
  CHECK(default_hf_step({1.0, 0.5}) == Approx(1e-3));
}

TEST_CASE("energies increase with the coupling", "[verify][property]") {
  std::vector<double> previous;
  for (double g : standard_g1_sweep()) {
    const auto e = jacobi_numeric_spectrum({1.0, g}, 4, GridSettings{});
    if (!previous.empty()) {
      for (std::size_t i = 0; i < e.size(); ++i) CHECK(e[i] > previous[i] + 1e-4);
    }
    previous = e;
  }
}

TEST_CASE("audit of the g1-independence claims", "[verify]") {
  const auto r = claims_audit({1.0, 3.0}, kHalfLineShoOffset);
  CHECK(all_passed(r));
  const Check* a = r.find("claim (a) spectrum independent of g1: refuted");
  REQUIRE(a != nullptr);
  CHECK(a->measured == Approx(std::sqrt(5.0) / 2.0 - std::sqrt(7.0 / 12.0)).margin(1e-4));
  const Check* b = r.find("claim (b) all f_m^2 equal: refuted");
  REQUIRE(b != nullptr);
  CHECK(b->measured >= 1.0);
  const Check* c = r.find("claim (c) k_00^2 = l(l+1) = 0: refuted");
  REQUIRE(c != nullptr);
  CHECK(c->measured > 1.0);

  const auto one = claims_audit({1.0, 1.0}, kHalfLineShoOffset);
  CHECK(all_passed(one));
}

TEST_CASE("3D verification on a small grid", "[verify][hd3d]") {
  // Coarse grid: only the structure is checked here, the accuracy budget belongs to the 61^3 run.
  const auto r = verify_3d({1.0, 3.0}, 3, 0.05, kHalfLineShoOffset, Grid3dSettings{31, 7.0});
  CHECK(all_passed(r));
  REQUIRE(r.levels.size() == 3);
  CHECK(r.levels[2].energy - r.levels[0].energy == Approx(1.0).margin(0.05));
  CHECK(r.levels[0].label.find("X2") != std::string::npos);
}
