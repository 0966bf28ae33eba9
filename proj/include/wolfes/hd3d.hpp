#pragma once

// Direct finite-difference diagonalization of
//
//   H_d = -1/2 Laplacian + (w^2/2)(X1^2 + X2^2 + X3^2) + g1^2 / (6 X2^2)
//
// on a cube of side `extent / sqrt(w)` with Dirichlet walls. X1 and X3 are
// node-centered (0 is a node); X2 nodes sit at (j + 1/2) h so none lies on
// the singular plane.
//
// The grid is invariant under X1 -> -X1, X2 -> -X2, X3 -> -X3 and X1 <-> X3.
// A single Krylov sequence only sees one vector of an exactly degenerate
// eigenspace, so the lowest states are computed per symmetry sector:
// X2 parity (the two mirror half-spaces) times the sectors of the
// (X1, X3) square group. The two-dimensional irrep (odd in exactly one of
// X1, X3) is represented by its odd-X1 component and counted twice.
// Each sector is solved on the reduced grid of its fundamental domain
// (Hd3dSectorOperator); Hd3dOperator is the full-grid reference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "wolfes/errors.hpp"
#include "wolfes/lanczos.hpp"
#include "wolfes/model.hpp"
#include "wolfes/parallel.hpp"

namespace wolfes {

/// Characters of one symmetry sector. x13_exchange is 0 when the sector
/// is not split by X1 <-> X3 (the mixed-parity pair).
struct Hd3dSector {
  int x1_parity;     // +1 even, -1 odd
  int x2_parity;     // +1 even, -1 odd
  int x3_parity;
  int x13_exchange;  // +1, -1, or 0
  unsigned multiplicity;

  std::string label() const {
    auto p = [](int s) { return s > 0 ? '+' : '-'; };
    std::string out{'X', '1', p(x1_parity), ' ', 'X', '2', p(x2_parity), ' ', 'X', '3', p(x3_parity)};
    if (x13_exchange != 0) out += x13_exchange > 0 ? " swap+" : " swap-";
    return out;
  }
};

inline std::vector<Hd3dSector> hd3d_sectors() {
  std::vector<Hd3dSector> out;
  for (int s2 : {+1, -1}) {
    out.push_back({+1, s2, +1, +1, 1});
    out.push_back({+1, s2, +1, -1, 1});
    out.push_back({-1, s2, -1, +1, 1});
    out.push_back({-1, s2, -1, -1, 1});
    out.push_back({-1, s2, +1, 0, 2});
  }
  return out;
}

struct Hd3dLevel {
  double value;
  double residual;
  Hd3dSector sector;
};

struct Hd3dResult {
  std::vector<Hd3dLevel> levels;  // ascending, one entry per state (multiplicity expanded)
  std::size_t n_axis = 0;         // X1 and X3 nodes
  std::size_t n_x2 = 0;           // X2 nodes
  double spacing = 0.0;
  double half_width = 0.0;
  double residual_bound = 0.0;
  std::vector<double> ground_ritz_history;  // lowest Ritz value per cycle, X2-even ground sector

  std::vector<double> eigenvalues() const {
    std::vector<double> v;
    for (const auto& l : levels) v.push_back(l.value);
    return v;
  }
};

/// Grid Hamiltonian as a matrix-free operator. Index (i1, j2, i3) -> (i1 * n_x2 + j2) * n + i3.
class Hd3dOperator {
 public:
  Hd3dOperator(const ModelParams& params, std::size_t n_per_axis, double extent)
      : n_(n_per_axis), m_(n_per_axis - 1) {
    if (n_per_axis < 16) throw InvalidArgument("3D grid needs at least 16 nodes per axis");
    if (n_per_axis % 2 == 0) throw InvalidArgument("3D grid needs an odd node count so X1 = 0 is a node");
    if (!(extent > 0.0)) throw InvalidArgument("3D extent must be positive");
    half_width_ = 0.5 * extent / std::sqrt(params.omega());
    h_ = 2.0 * half_width_ / static_cast<double>(n_ + 1);
    hop_ = -0.5 / (h_ * h_);

    const double w2 = params.omega() * params.omega();
    const double g = params.g1_squared();
    const long half = static_cast<long>(n_ - 1) / 2;
    std::vector<double> x(n_), y(m_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = h_ * static_cast<double>(static_cast<long>(i) - half);
    for (std::size_t j = 0; j < m_; ++j) {
      y[j] = h_ * (static_cast<double>(static_cast<long>(j) - static_cast<long>(m_ / 2)) + 0.5);
    }
    diag_.resize(size());
    const double onsite = 3.0 / (h_ * h_);
    for (std::size_t i1 = 0; i1 < n_; ++i1) {
      for (std::size_t j2 = 0; j2 < m_; ++j2) {
        for (std::size_t i3 = 0; i3 < n_; ++i3) {
          diag_[index(i1, j2, i3)] = onsite + 0.5 * w2 * (x[i1] * x[i1] + y[j2] * y[j2] + x[i3] * x[i3]) +
                                     g / (6.0 * y[j2] * y[j2]);
        }
      }
    }
  }

  std::size_t size() const noexcept { return n_ * m_ * n_; }
  std::size_t n_axis() const noexcept { return n_; }
  std::size_t n_x2() const noexcept { return m_; }
  double spacing() const noexcept { return h_; }
  double half_width() const noexcept { return half_width_; }

  std::size_t index(std::size_t i1, std::size_t j2, std::size_t i3) const noexcept {
    return (i1 * m_ + j2) * n_ + i3;
  }

  /// y = H x, parallel over X1 slabs.
  void apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t slab = m_ * n_;
    auto body = [&](std::size_t i1) {
      for (std::size_t j2 = 0; j2 < m_; ++j2) {
        for (std::size_t i3 = 0; i3 < n_; ++i3) {
          const std::size_t id = index(i1, j2, i3);
          double nb = 0.0;
          if (i1 > 0) nb += x[id - slab];
          if (i1 + 1 < n_) nb += x[id + slab];
          if (j2 > 0) nb += x[id - n_];
          if (j2 + 1 < m_) nb += x[id + n_];
          if (i3 > 0) nb += x[id - 1];
          if (i3 + 1 < n_) nb += x[id + 1];
          out[id] = diag_[id] * x[id] + hop_ * nb;
        }
      }
    };
    const std::size_t workers = std::min(thread_count(), n_);
    if (workers <= 1) {
      for (std::size_t i1 = 0; i1 < n_; ++i1) body(i1);
      return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i1 = w; i1 < n_; i1 += workers) body(i1);
      });
    }
  }

  /// In-place projection onto a symmetry sector.
  void project(const Hd3dSector& s, std::span<double> v) const {
    std::vector<double> tmp(v.begin(), v.end());
    for (std::size_t i1 = 0; i1 < n_; ++i1) {
      for (std::size_t j2 = 0; j2 < m_; ++j2) {
        for (std::size_t i3 = 0; i3 < n_; ++i3) {
          const std::size_t r1 = n_ - 1 - i1;
          const std::size_t r2 = m_ - 1 - j2;
          const std::size_t r3 = n_ - 1 - i3;
          // Average over the X2 mirror and the X1, X3 reflections.
          double acc = 0.0;
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              for (int c = 0; c < 2; ++c) {
                const double sign = (a ? s.x1_parity : 1) * (b ? s.x2_parity : 1) * (c ? s.x3_parity : 1);
                acc += sign * tmp[index(a ? r1 : i1, b ? r2 : j2, c ? r3 : i3)];
              }
            }
          }
          v[index(i1, j2, i3)] = acc / 8.0;
        }
      }
    }
    if (s.x13_exchange == 0) return;
    tmp.assign(v.begin(), v.end());
    for (std::size_t i1 = 0; i1 < n_; ++i1) {
      for (std::size_t j2 = 0; j2 < m_; ++j2) {
        for (std::size_t i3 = 0; i3 < n_; ++i3) {
          v[index(i1, j2, i3)] = 0.5 * (tmp[index(i1, j2, i3)] + s.x13_exchange * tmp[index(i3, j2, i1)]);
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::size_t m_;
  double half_width_ = 0.0;
  double h_ = 0.0;
  double hop_ = 0.0;
  std::vector<double> diag_;
};

/// One axis of the grid Hamiltonian restricted to a reflection parity:
/// a symmetric tridiagonal matrix on the nonnegative half of the axis.
/// Even parity on a node-centered axis keeps the X = 0 node, rescaled by
/// 1/sqrt(2) so the matrix stays symmetric; odd parity drops it. On the
/// half-offset axis the mirror neighbor of the first node is +-itself.
struct ReducedAxis {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> coordinate;
};

inline ReducedAxis reduce_axis(const std::vector<double>& x, bool node_centered, int parity, double h,
                               double omega, double coupling) {
  const double hop = -0.5 / (h * h);
  const std::size_t n = x.size();
  const std::size_t first = node_centered ? (n - 1) / 2 + (parity > 0 ? 0 : 1) : n / 2;
  ReducedAxis a;
  for (std::size_t i = first; i < n; ++i) {
    a.coordinate.push_back(x[i]);
    double d = 1.0 / (h * h) + 0.5 * omega * omega * x[i] * x[i];
    if (coupling != 0.0) d += coupling / (6.0 * x[i] * x[i]);
    a.diag.push_back(d);
    if (i + 1 < n) a.off.push_back(hop);
  }
  if (node_centered && parity > 0) a.off.front() *= std::sqrt(2.0);
  if (!node_centered) a.diag.front() += parity * hop;
  return a;
}

/// H_d restricted to one symmetry sector, acting on the reduced grid.
/// Unitarily equivalent to Hd3dOperator on the sector subspace.
class Hd3dSectorOperator {
 public:
  Hd3dSectorOperator(const ModelParams& params, std::size_t n_per_axis, double extent, const Hd3dSector& sector)
      : sector_(sector) {
    const Hd3dOperator full(params, n_per_axis, extent);
    const double h = full.spacing();
    const std::size_t n = full.n_axis(), m = full.n_x2();
    const long half = static_cast<long>(n - 1) / 2;
    std::vector<double> x(n), y(m);
    for (std::size_t i = 0; i < n; ++i) x[i] = h * static_cast<double>(static_cast<long>(i) - half);
    for (std::size_t j = 0; j < m; ++j) {
      y[j] = h * (static_cast<double>(static_cast<long>(j) - static_cast<long>(m / 2)) + 0.5);
    }
    ax_[0] = reduce_axis(x, true, sector.x1_parity, h, params.omega(), 0.0);
    ax_[1] = reduce_axis(y, false, sector.x2_parity, h, params.omega(), params.g1_squared());
    ax_[2] = reduce_axis(x, true, sector.x3_parity, h, params.omega(), 0.0);
    n1_ = ax_[0].diag.size();
    n2_ = ax_[1].diag.size();
    n3_ = ax_[2].diag.size();
  }

  std::size_t size() const noexcept { return n1_ * n2_ * n3_; }
  const ReducedAxis& axis(int k) const { return ax_[k]; }

  void apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t slab = n2_ * n3_;
    const auto& a1 = ax_[0];
    const auto& a2 = ax_[1];
    const auto& a3 = ax_[2];
    auto body = [&](std::size_t i1) {
      for (std::size_t j2 = 0; j2 < n2_; ++j2) {
        const std::size_t row = (i1 * n2_ + j2) * n3_;
        const double d12 = a1.diag[i1] + a2.diag[j2];
        for (std::size_t i3 = 0; i3 < n3_; ++i3) {
          const std::size_t id = row + i3;
          double acc = (d12 + a3.diag[i3]) * x[id];
          if (i1 > 0) acc += a1.off[i1 - 1] * x[id - slab];
          if (i1 + 1 < n1_) acc += a1.off[i1] * x[id + slab];
          if (j2 > 0) acc += a2.off[j2 - 1] * x[id - n3_];
          if (j2 + 1 < n2_) acc += a2.off[j2] * x[id + n3_];
          if (i3 > 0) acc += a3.off[i3 - 1] * x[id - 1];
          if (i3 + 1 < n3_) acc += a3.off[i3] * x[id + 1];
          out[id] = acc;
        }
      }
    };
    const std::size_t workers = std::min(thread_count(), n1_);
    if (workers <= 1) {
      for (std::size_t i1 = 0; i1 < n1_; ++i1) body(i1);
      return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i1 = w; i1 < n1_; i1 += workers) body(i1);
      });
    }
  }

  /// X1 <-> X3 exchange projection; identity for the mixed-parity sector.
  void project(std::span<double> v) const {
    if (sector_.x13_exchange == 0) return;
    for (std::size_t i1 = 0; i1 < n1_; ++i1) {
      for (std::size_t i3 = i1 + 1; i3 < n3_; ++i3) {
        for (std::size_t j2 = 0; j2 < n2_; ++j2) {
          double& a = v[(i1 * n2_ + j2) * n3_ + i3];
          double& b = v[(i3 * n2_ + j2) * n3_ + i1];
          const double sym = 0.5 * (a + sector_.x13_exchange * b);
          a = sym;
          b = sector_.x13_exchange * sym;
        }
      }
      if (sector_.x13_exchange < 0) {
        for (std::size_t j2 = 0; j2 < n2_; ++j2) v[(i1 * n2_ + j2) * n3_ + i1] = 0.0;
      }
    }
  }

 private:
  Hd3dSector sector_;
  ReducedAxis ax_[3];
  std::size_t n1_ = 0, n2_ = 0, n3_ = 0;
};

struct Hd3dOptions {
  double tol = 1e-8;
  std::size_t basis_size = 40;
  std::size_t max_restarts = 400;
};

/// Lowest k eigenvalues of H_d on an n^3-class grid (X2 carries n - 1 nodes).
inline Hd3dResult solve_hd_3d(const ModelParams& params, std::size_t n_per_axis, double extent,
                              std::size_t k, const Hd3dOptions& opts = {}) {
  if (k == 0 || k > 10) throw InvalidArgument("solve_hd_3d: k must be in 1..10");
  const Hd3dOperator full(params, n_per_axis, extent);

  Hd3dResult out;
  out.n_axis = full.n_axis();
  out.n_x2 = full.n_x2();
  out.spacing = full.spacing();
  out.half_width = full.half_width();

  std::vector<Hd3dLevel> all;
  bool first = true;
  for (const auto& sector : hd3d_sectors()) {
    const Hd3dSectorOperator op(params, n_per_axis, extent, sector);
    const LinearOperator apply = [&op](std::span<const double> x, std::span<double> y) { op.apply(x, y); };
    const SubspaceProjector project = [&op](std::span<double> v) { op.project(v); };
    std::vector<double> start(op.size());
    for (std::size_t i = 0; i < start.size(); ++i) start[i] = detail::hashed_unit(i);
    LanczosOptions lo;
    lo.nev = sector.multiplicity == 2 ? (k + 1) / 2 : k;
    lo.basis_size = opts.basis_size;
    lo.max_restarts = opts.max_restarts;
    lo.tol = opts.tol;
    const LanczosResult r = lanczos_lowest(op.size(), apply, std::move(start), lo, project);
    if (first) out.ground_ritz_history = r.lowest_ritz_history;
    first = false;
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      for (unsigned c = 0; c < sector.multiplicity; ++c) all.push_back({r.eigenvalues[i], r.residuals[i], sector});
      out.residual_bound = std::max(out.residual_bound, r.residuals[i]);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Hd3dLevel& a, const Hd3dLevel& b) { return a.value < b.value; });
  all.resize(std::min(all.size(), k));
  out.levels = std::move(all);
  return out;
}

}  // namespace wolfes
