#pragma once

// Particle <-> Jacobi <-> spherical transforms for the four-particle chain.
//
//   X1 = (x1 - x2) / sqrt(2)
//   X2 = (x1 + x2 - 2 x3) / sqrt(6)
//   X3 = (x1 + x2 + x3 - 3 x4) / sqrt(12)
//   X  = (x1 + x2 + x3 + x4) / 2
//
// The coefficient matrix is orthogonal, so the Laplacian keeps its form and
// the quadratic pair sum becomes 4 (X1^2 + X2^2 + X3^2).

#include <array>
#include <cmath>
#include <numbers>

#include "wolfes/errors.hpp"
#include "wolfes/model.hpp"

namespace wolfes {

struct ParticleConfig {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;

  std::array<double, 4> as_array() const { return {x1, x2, x3, x4}; }
};

struct JacobiConfig {
  double X1 = 0.0;
  double X2 = 0.0;
  double X3 = 0.0;
  double Xcm = 0.0;

  std::array<double, 4> as_array() const { return {X1, X2, X3, Xcm}; }
};

/// r >= 0, theta in [0, pi], phi in [0, 2 pi).
struct SphericalConfig {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Rows are X1, X2, X3, Xcm in terms of x1..x4.
inline Matrix4 jacobi_matrix() {
  const double a = 1.0 / std::numbers::sqrt2;
  const double b = 1.0 / std::sqrt(6.0);
  const double c = 1.0 / std::sqrt(12.0);
  return {{{a, -a, 0.0, 0.0},
           {b, b, -2.0 * b, 0.0},
           {c, c, c, -3.0 * c},
           {0.5, 0.5, 0.5, 0.5}}};
}

inline JacobiConfig to_jacobi(const ParticleConfig& p) {
  const auto J = jacobi_matrix();
  const auto x = p.as_array();
  std::array<double, 4> X{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) X[i] += J[i][k] * x[k];
  }
  return {X[0], X[1], X[2], X[3]};
}

/// Inverse via the transpose.
inline ParticleConfig from_jacobi(const JacobiConfig& j) {
  const auto J = jacobi_matrix();
  const auto X = j.as_array();
  std::array<double, 4> x{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) x[i] += J[k][i] * X[k];
  }
  return {x[0], x[1], x[2], x[3]};
}

/// Drops Xcm. phi is 0 on the polar axis.
inline SphericalConfig to_spherical(const JacobiConfig& j) {
  const double r = std::sqrt(j.X1 * j.X1 + j.X2 * j.X2 + j.X3 * j.X3);
  if (r == 0.0) throw DegenerateOrigin("spherical angles undefined at r = 0");
  const double theta = std::acos(std::clamp(j.X3 / r, -1.0, 1.0));
  double phi = 0.0;
  if (j.X1 != 0.0 || j.X2 != 0.0) {
    phi = std::atan2(j.X2, j.X1);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  }
  return {r, theta, phi};
}

inline JacobiConfig from_spherical(const SphericalConfig& s) {
  const double st = std::sin(s.theta);
  return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi), s.r * std::cos(s.theta), 0.0};
}

/// (w^2/8) sum_{i<j} (xi - xj)^2 + g1^2 / (x1 + x2 - 2 x3)^2.
/// The Wolfes plane is singular only when g1^2 > 0.
inline double potential_particle(const ParticleConfig& p, const ModelParams& params) {
  const auto x = p.as_array();
  double pair_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) pair_sum += (x[i] - x[k]) * (x[i] - x[k]);
  }
  const double w2 = params.omega() * params.omega();
  double v = w2 / 8.0 * pair_sum;
  if (params.g1_squared() > 0.0) {
    const double wolfes = p.x1 + p.x2 - 2.0 * p.x3;
    if (wolfes == 0.0) throw SingularConfiguration("x1 + x2 - 2 x3 = 0");
    v += params.g1_squared() / (wolfes * wolfes);
  }
  return v;
}

/// (w^2/2)(X1^2 + X2^2 + X3^2) + g1^2 / (6 X2^2).
inline double potential_jacobi(const JacobiConfig& j, const ModelParams& params) {
  const double w2 = params.omega() * params.omega();
  double v = 0.5 * w2 * (j.X1 * j.X1 + j.X2 * j.X2 + j.X3 * j.X3);
  if (params.g1_squared() > 0.0) {
    if (j.X2 == 0.0) throw SingularConfiguration("X2 = 0");
    v += params.g1_squared() / (6.0 * j.X2 * j.X2);
  }
  return v;
}

}  // namespace wolfes
