#pragma once

// One-dimensional eigenproblems appearing in the two separations of H_d.
//
// Jacobi route:    HO    -1/2 u'' + (w^2/2) X^2 u                     on (-L, L)
//                  SHO   -1/2 u'' + [(w^2/2) X^2 + g1^2/(6 X^2)] u    on (0, L)
// Spherical route: PHI   -u'' + (g1^2/3)/sin^2(phi) u = f^2 u           on (0, pi)
//                  THETA -(1/sin)(sin T')' + f^2/sin^2 T = k^2 T         on (0, pi)
//                  RADIAL -1/2 u'' + [(w^2/2) r^2 + k^2/(2 r^2)] u = E u on (0, L), u = r R
//
// The angular operators carry no 1/2 on the second derivative.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "wolfes/errors.hpp"
#include "wolfes/model.hpp"
#include "wolfes/tridiagonal.hpp"

namespace wolfes {

enum class ChannelKind { kHO, kSHO, kRadial, kAngularPhi, kAngularTheta };

inline const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::kHO: return "HO";
    case ChannelKind::kSHO: return "SHO";
    case ChannelKind::kRadial: return "RADIAL";
    case ChannelKind::kAngularPhi: return "ANGULAR_PHI";
    case ChannelKind::kAngularTheta: return "ANGULAR_THETA";
  }
  return "?";
}

/// coefficient: k^2 (RADIAL), f^2 (ANGULAR_THETA), g1^2/3 (ANGULAR_PHI); HO and SHO read ModelParams.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kHO;
  double coefficient = 0.0;
};

/// Domain lengths and base resolution for the 1D channels. HO uses
/// (-L, L) with L = extent / sqrt(w); the half-line channels use
/// 7/6 of that; angular channels use (0, pi). Scaling with 1/sqrt(w) keeps
/// the discrete operator exactly w times its w = 1 counterpart.
struct GridSettings {
  std::size_t points = 2001;
  double extent = 12.0;

  Grid1D grid_for(ChannelKind kind, const ModelParams& p) const {
    const double L = extent / std::sqrt(p.omega());
    switch (kind) {
      case ChannelKind::kHO: return {-L, L, points};
      case ChannelKind::kSHO:
      case ChannelKind::kRadial: return {0.0, L * 7.0 / 6.0, points};
      case ChannelKind::kAngularPhi:
      case ChannelKind::kAngularTheta: return {0.0, std::numbers::pi, points};
    }
    throw InvalidArgument("unknown channel kind");
  }
};

namespace detail {

inline bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

inline void check_domain(ChannelKind kind, const Grid1D& g) {
  bool ok = true;
  switch (kind) {
    case ChannelKind::kHO: ok = near(g.lower(), -g.upper()); break;
    case ChannelKind::kSHO:
    case ChannelKind::kRadial: ok = g.lower() == 0.0; break;
    case ChannelKind::kAngularPhi:
    case ChannelKind::kAngularTheta:
      ok = g.lower() == 0.0 && near(g.upper(), std::numbers::pi);
      break;
  }
  if (!ok) {
    throw InvalidArgument(std::string("grid domain does not match channel ") + to_string(kind));
  }
}

/// Cell-centered flux form of -(1/sin)(sin T')' + f^2/sin^2 T, symmetrized by
/// the diagonal similarity w = sqrt(sin) T. Cells of width h tile (0, pi);
/// the sin factor on the end faces vanishes, so no boundary value is imposed
/// on T and both regular behaviours (T(0) finite for f = 0, T ~ theta^f
/// otherwise) come out of the same stencil.
inline TridiagonalMatrix theta_operator(std::size_t cells, double f_squared) {
  const double h = std::numbers::pi / static_cast<double>(cells);
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> s(cells), face(cells + 1);
  for (std::size_t i = 0; i < cells; ++i) s[i] = std::sin((static_cast<double>(i) + 0.5) * h);
  face[0] = 0.0;
  face[cells] = 0.0;
  for (std::size_t i = 1; i < cells; ++i) face[i] = std::sin(static_cast<double>(i) * h);
  std::vector<double> d(cells), e(cells - 1);
  for (std::size_t i = 0; i < cells; ++i) {
    d[i] = (face[i] + face[i + 1]) * inv_h2 / s[i] + f_squared / (s[i] * s[i]);
  }
  for (std::size_t i = 0; i + 1 < cells; ++i) {
    e[i] = -face[i + 1] * inv_h2 / std::sqrt(s[i] * s[i + 1]);
  }
  return {std::move(d), std::move(e)};
}

}  // namespace detail

/// Lowest k eigenvalues of the selected channel on the given grid.
/// Eigenvectors are normalized so that sum v_i^2 h = 1 on the returned grid.
/// ANGULAR_THETA runs on the n + 1 cell midpoints of the node grid it is
/// given, so the spacing (and its refinement) matches the other channels.
inline EigenResult solve_channel(const ChannelSpec& spec, const ModelParams& params,
                                 const Grid1D& grid, std::size_t k, bool want_vectors = false) {
  detail::check_domain(spec.kind, grid);
  if (!(spec.coefficient >= 0.0)) throw InvalidArgument("channel coefficient must be nonnegative");
  if (k == 0 || k > grid.n_points()) throw InvalidArgument("solve_channel: k out of range");

  const double w2 = params.omega() * params.omega();
  const double g = params.g1_squared();
  const double c = spec.coefficient;

  TridiagonalMatrix t;
  Grid1D used = grid;
  switch (spec.kind) {
    case ChannelKind::kHO:
      t = discretize([w2](double x) { return 0.5 * w2 * x * x; }, grid);
      break;
    case ChannelKind::kSHO:
      t = discretize([w2, g](double x) { return 0.5 * w2 * x * x + g / (6.0 * x * x); }, grid);
      break;
    case ChannelKind::kRadial:
      t = discretize([w2, c](double r) { return 0.5 * w2 * r * r + c / (2.0 * r * r); }, grid);
      break;
    case ChannelKind::kAngularPhi:
      t = discretize(
          [c](double phi) {
            const double s = std::sin(phi);
            return c / (s * s);
          },
          grid, 1.0);
      break;
    case ChannelKind::kAngularTheta: {
      const std::size_t cells = grid.n_points() + 1;
      const double h = std::numbers::pi / static_cast<double>(cells);
      used = Grid1D(-0.5 * h, std::numbers::pi + 0.5 * h, cells);
      t = detail::theta_operator(cells, c);
      break;
    }
  }

  EigenResult r = eigen_tridiag(t, k, want_vectors);
  if (want_vectors) {
    const double scale = 1.0 / std::sqrt(used.spacing());
    for (auto& v : r.eigenvectors) {
      for (double& x : v) x *= scale;
    }
    r.residual_bound *= scale;
  }
  r.grid = used;
  return r;
}

/// Channel eigenvalues at spacing h and h/2 plus their Richardson extrapolant.
struct ExtrapolatedLevels {
  std::vector<double> coarse;
  std::vector<double> fine;
  std::vector<double> extrapolated;
};

inline ExtrapolatedLevels solve_channel_extrapolated(const ChannelSpec& spec, const ModelParams& params,
                                                     const Grid1D& grid, std::size_t k) {
  ExtrapolatedLevels out;
  out.coarse = solve_channel(spec, params, grid, k).eigenvalues;
  out.fine = solve_channel(spec, params, grid.refined(), k).eigenvalues;
  out.extrapolated = richardson(out.coarse, out.fine);
  return out;
}

inline ExtrapolatedLevels solve_channel_extrapolated(const ChannelSpec& spec, const ModelParams& params,
                                                     const GridSettings& settings, std::size_t k) {
  return solve_channel_extrapolated(spec, params, settings.grid_for(spec.kind, params), k);
}

}  // namespace wolfes
