#pragma once

// Thick-restart symmetric Lanczos with full reorthogonalization for the
// lowest eigenpairs of a matrix-free operator.
//
// The projected matrix is rebuilt from explicit dot products (classical
// Gram-Schmidt, two passes), so after a restart it has the usual
// diagonal-plus-arrow shape without any bookkeeping.  An optional projector
// keeps the iteration inside an invariant subspace (a symmetry sector).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wolfes/errors.hpp"
#include "wolfes/parallel.hpp"
#include "wolfes/tridiagonal.hpp"

namespace wolfes {

struct LanczosOptions {
  std::size_t nev = 1;
  std::size_t basis_size = 40;
  std::size_t max_restarts = 400;
  double tol = 1e-8;  // on ||A x - theta x|| / max(1, |theta|)
  bool want_vectors = false;
};

struct LanczosResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  std::vector<double> residuals;
  std::vector<double> lowest_ritz_history;  // lowest Ritz value after each cycle
  std::size_t restarts = 0;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;
using SubspaceProjector = std::function<void(std::span<double>)>;

namespace detail {

inline void orthogonalize(const std::vector<std::vector<double>>& basis, std::size_t count,
                          std::vector<double>& w, std::vector<double>* coef) {
  if (coef) coef->assign(count, 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) c[i] = dot(basis[i], w);
    for (std::size_t i = 0; i < count; ++i) {
      axpy(-c[i], basis[i], w);
      if (coef) (*coef)[i] += c[i];
    }
  }
}

inline std::vector<double> combine(const std::vector<std::vector<double>>& basis, std::size_t count,
                                   const Eigen::MatrixXd& y, std::size_t column) {
  std::vector<double> x(basis[0].size(), 0.0);
  for (std::size_t j = 0; j < count; ++j) axpy(y(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(column)), basis[j], x);
  return x;
}

}  // namespace detail

/// Lowest opts.nev eigenpairs of the symmetric operator `apply` on R^dim.
/// Throws ConvergenceFailure after opts.max_restarts cycles.
inline LanczosResult lanczos_lowest(std::size_t dim, const LinearOperator& apply,
                                    std::vector<double> start, const LanczosOptions& opts,
                                    const SubspaceProjector& project = {}) {
  if (opts.nev == 0) throw InvalidArgument("lanczos: nev must be positive");
  if (start.size() != dim) throw InvalidArgument("lanczos: start vector has wrong size");
  std::size_t m = std::min(std::max(opts.basis_size, 2 * opts.nev + 4), dim);
  if (m < opts.nev) throw InvalidArgument("lanczos: nev exceeds dimension");

  auto restrict = [&](std::vector<double>& v) {
    if (project) project(v);
  };
  std::uint64_t fresh_seed = 1;
  auto fresh_direction = [&](const std::vector<std::vector<double>>& basis, std::size_t count,
                             std::vector<double>& v) {
    for (std::size_t i = 0; i < dim; ++i) v[i] = detail::hashed_unit(i + 1000003 * fresh_seed);
    ++fresh_seed;
    restrict(v);
    detail::orthogonalize(basis, count, v, nullptr);
    return std::sqrt(dot(v, v));
  };

  std::vector<std::vector<double>> basis;
  basis.reserve(m + 1);
  restrict(start);
  double nrm = std::sqrt(dot(start, start));
  if (!(nrm > 0.0)) throw InvalidArgument("lanczos: start vector vanishes in the target subspace");
  scale(1.0 / nrm, start);
  basis.push_back(std::move(start));

  LanczosResult out;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  std::size_t kept = 0;
  std::vector<double> w(dim), coef;

  for (std::size_t cycle = 0;; ++cycle) {
    double beta = 0.0;
    std::size_t active = m;
    for (std::size_t j = kept; j < active; ++j) {
      apply(basis[j], w);
      restrict(w);
      detail::orthogonalize(basis, j + 1, w, &coef);
      // Rounding in the Gram-Schmidt sums leaks out of the sector and A amplifies it.
      restrict(w);
      for (std::size_t i = 0; i <= j; ++i) {
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(j);
        h(a, b) = coef[i];
        h(b, a) = coef[i];
      }
      beta = std::sqrt(dot(w, w));
      const double breakdown = 1e-13 * std::max(1.0, std::abs(coef[j]));
      if (j + 1 < active) {
        if (beta <= breakdown) {
          // Invariant subspace: continue with a fresh direction, decoupled.
          beta = 0.0;
          const double fn = fresh_direction(basis, j + 1, w);
          if (fn <= 1e-10) {
            active = j + 1;
            break;
          }
          scale(1.0 / fn, w);
        } else {
          scale(1.0 / beta, w);
        }
        if (basis.size() == j + 1) basis.push_back(w);
        else basis[j + 1] = w;
      } else if (beta <= breakdown) {
        beta = 0.0;
      }
    }

    const auto msize = static_cast<Eigen::Index>(active);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.topLeftCorner(msize, msize));
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXd y = es.eigenvectors();
    const std::size_t nev = std::min(opts.nev, active);

    std::vector<double> res(nev);
    bool converged = nev == opts.nev;
    double worst = 0.0;
    for (std::size_t i = 0; i < nev; ++i) {
      res[i] = std::abs(beta * y(msize - 1, static_cast<Eigen::Index>(i)));
      const double rel = res[i] / std::max(1.0, std::abs(theta(static_cast<Eigen::Index>(i))));
      worst = std::max(worst, rel);
      if (rel > opts.tol) converged = false;
    }
    out.lowest_ritz_history.push_back(theta(0));
    out.restarts = cycle;

    if (converged) {
      for (std::size_t i = 0; i < nev; ++i) {
        out.eigenvalues.push_back(theta(static_cast<Eigen::Index>(i)));
        out.residuals.push_back(res[i]);
        if (opts.want_vectors) out.eigenvectors.push_back(detail::combine(basis, active, y, i));
      }
      return out;
    }
    if (cycle + 1 >= opts.max_restarts || active < m) {
      throw ConvergenceFailure("lanczos: no convergence within " + std::to_string(opts.max_restarts) +
                                   " restarts (relative residual " + std::to_string(worst) + ")",
                               worst);
    }

    // Thick restart: keep the lowest p Ritz vectors and the residual direction.
    const std::size_t p = std::min(m - 1, std::max(nev + (m - nev) / 2, nev + 1));
    std::vector<std::vector<double>> next;
    next.reserve(m + 1);
    for (std::size_t i = 0; i < p; ++i) next.push_back(detail::combine(basis, active, y, i));
    if (beta == 0.0) {
      const double fn = fresh_direction(next, p, w);
      scale(1.0 / fn, w);
    } else {
      scale(1.0 / beta, w);
    }
    next.push_back(w);
    basis = std::move(next);
    h.setZero();
    for (std::size_t i = 0; i < p; ++i) {
      const auto a = static_cast<Eigen::Index>(i);
      h(a, a) = theta(a);
      const double arrow = beta * y(msize - 1, a);
      h(a, static_cast<Eigen::Index>(p)) = arrow;
      h(static_cast<Eigen::Index>(p), a) = arrow;
    }
    kept = p;
  }
}

}  // namespace wolfes
