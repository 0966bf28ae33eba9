#pragma once

// Uniform Dirichlet grids, the 3-point stencil, and a partial-spectrum
// symmetric tridiagonal eigensolver (Sturm bisection + inverse iteration).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "wolfes/errors.hpp"

namespace wolfes {

/// n_points interior nodes x_i = lower + i h (i = 1..n); zeros at both ends.
class Grid1D {
 public:
  Grid1D(double lower, double upper, std::size_t n_points)
      : lower_(lower), upper_(upper), n_points_(n_points) {
    if (!(upper > lower)) throw InvalidArgument("grid needs upper > lower");
    if (n_points < 3) throw InvalidArgument("grid needs at least 3 interior nodes");
  }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  std::size_t n_points() const noexcept { return n_points_; }
  double spacing() const noexcept { return (upper_ - lower_) / static_cast<double>(n_points_ + 1); }

  /// Zero-based: node(0) is the first interior node.
  double node(std::size_t i) const noexcept {
    return lower_ + static_cast<double>(i + 1) * spacing();
  }

  std::vector<double> nodes() const {
    std::vector<double> x(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) x[i] = node(i);
    return x;
  }

  /// Same domain, spacing halved.
  Grid1D refined() const { return {lower_, upper_, 2 * n_points_ + 1}; }

 private:
  double lower_;
  double upper_;
  std::size_t n_points_;
};

struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  TridiagonalMatrix() = default;
  TridiagonalMatrix(std::vector<double> d, std::vector<double> e)
      : diag(std::move(d)), offdiag(std::move(e)) {
    if (diag.empty() || offdiag.size() + 1 != diag.size()) {
      throw InvalidArgument("tridiagonal: offdiag must have length n - 1");
    }
  }

  std::size_t size() const noexcept { return diag.size(); }

  double trace() const {
    double t = 0.0;
    for (double d : diag) t += d;
    return t;
  }

  /// y = T x
  void apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * x[i];
      if (i > 0) s += offdiag[i - 1] * x[i - 1];
      if (i + 1 < n) s += offdiag[i] * x[i + 1];
      y[i] = s;
    }
  }

  /// max_i |d_i| + |e_{i-1}| + |e_i|
  double gershgorin_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, row_radius(i) + std::abs(diag[i]));
    return m;
  }

  double row_radius(std::size_t i) const {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i < offdiag.size()) r += std::abs(offdiag[i]);
    return r;
  }
};

struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;  // empty unless requested
  std::optional<Grid1D> grid;
  double residual_bound = 0.0;
};

/// diag_i = 2 c / h^2 + V(x_i), offdiag_i = -c / h^2 for the operator -c d^2/dx^2 + V.
/// The default c = 1/2 is the kinetic prefactor of the Hamiltonian.
inline TridiagonalMatrix discretize(const std::function<double(double)>& potential,
                                    const Grid1D& grid, double kinetic_prefactor = 0.5) {
  const std::size_t n = grid.n_points();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const double hop = -kinetic_prefactor * inv_h2;
  const double onsite = 2.0 * kinetic_prefactor * inv_h2;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = potential(grid.node(i));
    if (!std::isfinite(v)) throw InvalidArgument("potential is not finite at a grid node");
    d[i] = onsite + v;
  }
  return {std::move(d), std::vector<double>(n - 1, hop)};
}

namespace detail {

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
inline std::size_t sturm_count(const TridiagonalMatrix& t, double x, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double e = t.offdiag[i - 1];
    q = t.diag[i] - x - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Deterministic values in (-1, 1) from an index (splitmix64).
inline double hashed_unit(std::uint64_t i) {
  std::uint64_t z = i + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
}

inline double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Solves (T - shift) x = b in place by Gaussian elimination with partial pivoting.
inline void shifted_solve(const TridiagonalMatrix& t, double shift, double pivmin,
                          std::vector<double>& b) {
  const std::size_t n = t.size();
  // Row i of U: u0[i] on the diagonal, u1[i], u2[i] to its right.
  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<char> swapped(n, 0);
  double a = t.diag[0] - shift;
  double c = n > 1 ? t.offdiag[0] : 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double below = t.offdiag[i];
    const double next_diag = t.diag[i + 1] - shift;
    const double next_super = i + 2 < n ? t.offdiag[i + 1] : 0.0;
    if (std::abs(a) >= std::abs(below)) {
      if (std::abs(a) < pivmin) a = pivmin;
      u0[i] = a;
      u1[i] = c;
      u2[i] = 0.0;
      mult[i] = below / a;
      a = next_diag - mult[i] * c;
      c = next_super;
    } else {
      swapped[i] = 1;
      u0[i] = below;
      u1[i] = next_diag;
      u2[i] = next_super;
      mult[i] = a / below;
      a = c - mult[i] * next_diag;
      c = -mult[i] * next_super;
    }
  }
  if (std::abs(a) < pivmin) a = pivmin;
  u0[n - 1] = a;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) std::swap(b[i], b[i + 1]);
    b[i + 1] -= mult[i] * b[i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    if (i + 1 < n) s -= u1[i] * b[i + 1];
    if (i + 2 < n) s -= u2[i] * b[i + 2];
    b[i] = s / u0[i];
  }
}

}  // namespace detail

/// The k smallest eigenvalues of a symmetric tridiagonal matrix, ascending.
/// Eigenvectors (Euclidean unit norm) by at most five inverse-iteration sweeps,
/// reorthogonalized within clusters.
inline EigenResult eigen_tridiag(const TridiagonalMatrix& t, std::size_t k, bool want_vectors) {
  const std::size_t n = t.size();
  if (k == 0 || k > n) throw InvalidArgument("eigen_tridiag: k out of range");

  const double tnorm = std::max(t.gershgorin_norm(), std::numeric_limits<double>::min());
  const double eps = std::numeric_limits<double>::epsilon();
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, tnorm * tnorm);
  double glo = std::numeric_limits<double>::max();
  double ghi = std::numeric_limits<double>::lowest();
  for (std::size_t i = 0; i < n; ++i) {
    glo = std::min(glo, t.diag[i] - t.row_radius(i));
    ghi = std::max(ghi, t.diag[i] + t.row_radius(i));
  }
  glo -= 2.0 * eps * tnorm + pivmin;
  ghi += 2.0 * eps * tnorm + pivmin;

  EigenResult out;
  out.eigenvalues.resize(k);
  double worst_width = 0.0;
  double lo_floor = glo;
  for (std::size_t i = 0; i < k; ++i) {
    double lo = lo_floor;
    double hi = ghi;
    // Invariant: count(lo) <= i < count(hi).
    while (true) {
      const double mid = 0.5 * (lo + hi);
      const double width = hi - lo;
      const double target = std::max(1e-13 * std::max(std::abs(lo), std::abs(hi)), 4.0 * eps * tnorm);
      if (width <= target || mid <= lo || mid >= hi) break;
      if (detail::sturm_count(t, mid, pivmin) > i) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.eigenvalues[i] = 0.5 * (lo + hi);
    worst_width = std::max(worst_width, hi - lo);
    lo_floor = lo;
  }
  out.residual_bound = worst_width;
  if (!want_vectors) return out;

  const double cluster_gap = 1e-3 * tnorm;
  out.eigenvectors.reserve(k);
  std::size_t cluster_start = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double lambda = out.eigenvalues[i];
    if (i > 0 && lambda - out.eigenvalues[i - 1] > cluster_gap) cluster_start = i;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = detail::hashed_unit(j + 7919 * i);
    std::vector<double> tv(n);
    for (int sweep = 0; sweep < 5; ++sweep) {
      detail::shifted_solve(t, lambda, std::max(pivmin, eps * tnorm), v);
      for (std::size_t c = cluster_start; c < i; ++c) {
        const auto& u = out.eigenvectors[c];
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j) dot += u[j] * v[j];
        for (std::size_t j = 0; j < n; ++j) v[j] -= dot * u[j];
      }
      const double nv = detail::norm2(v);
      for (double& x : v) x /= nv;
      t.apply(v, tv);
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) r += (tv[j] - lambda * v[j]) * (tv[j] - lambda * v[j]);
      if (std::sqrt(r) <= 1e3 * eps * tnorm) break;
    }
    // Fix the sign so the largest component is positive.
    const auto big = std::max_element(v.begin(), v.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*big < 0.0) {
      for (double& x : v) x = -x;
    }
    out.eigenvectors.push_back(std::move(v));
  }

  double worst = 0.0;
  std::vector<double> tv(n);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& v = out.eigenvectors[i];
    t.apply(v, tv);
    double r = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = tv[j] - out.eigenvalues[i] * v[j];
      r += d * d;
    }
    worst = std::max(worst, std::sqrt(r));
  }
  out.residual_bound = worst;
  return out;
}

/// Fourth-order extrapolant from spacings h and h/2 of a second-order scheme.
inline double richardson(double e_h, double e_half) { return (4.0 * e_half - e_h) / 3.0; }

inline std::vector<double> richardson(std::span<const double> e_h, std::span<const double> e_half) {
  if (e_h.size() != e_half.size()) throw InvalidArgument("richardson: size mismatch");
  std::vector<double> out(e_h.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = richardson(e_h[i], e_half[i]);
  return out;
}

/// sum_i v_i^2 obs(x_i) h, the quadrature used to normalize eigenvectors.
inline double expectation(std::span<const double> v, const std::function<double(double)>& observable,
                          const Grid1D& grid) {
  if (v.size() != grid.n_points()) throw InvalidArgument("expectation: vector/grid size mismatch");
  const double h = grid.spacing();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double o = observable(grid.node(i));
    if (!std::isfinite(o)) throw InvalidArgument("observable is not finite at a grid node");
    s += v[i] * v[i] * o;
  }
  return s * h;
}

}  // namespace wolfes
