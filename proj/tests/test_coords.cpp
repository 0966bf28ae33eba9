#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "wolfes/coords.hpp"

using namespace wolfes;
using Catch::Approx;

namespace {

double det4(const Matrix4& m) {
  // Laplace expansion along the first row.
  auto det3 = [&](int skip) {
    int c[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) c[k++] = j;
    return m[1][c[0]] * (m[2][c[1]] * m[3][c[2]] - m[2][c[2]] * m[3][c[1]]) -
           m[1][c[1]] * (m[2][c[0]] * m[3][c[2]] - m[2][c[2]] * m[3][c[0]]) +
           m[1][c[2]] * (m[2][c[0]] * m[3][c[1]] - m[2][c[1]] * m[3][c[0]]);
  };
  double d = 0.0;
  for (int j = 0; j < 4; ++j) d += (j % 2 ? -1.0 : 1.0) * m[0][j] * det3(j);
  return d;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("Jacobi example values", "[coords]") {
  auto j = to_jacobi({1, 1, 1, 1});
  CHECK(j.X1 == Approx(0).margin(1e-15));
  CHECK(j.X2 == Approx(0).margin(1e-15));
  CHECK(j.X3 == Approx(0).margin(1e-15));
  CHECK(j.Xcm == Approx(2));

  j = to_jacobi({1, -1, 0, 0});
  CHECK(j.X1 == Approx(std::sqrt(2.0)));
  CHECK(j.X2 == Approx(0).margin(1e-15));
  CHECK(j.X3 == Approx(0).margin(1e-15));
  CHECK(j.Xcm == Approx(0).margin(1e-15));

  j = to_jacobi({1, 1, -1, 0});
  CHECK(j.X1 == Approx(0).margin(1e-15));
  CHECK(j.X2 == Approx(4 / std::sqrt(6.0)));
  CHECK(j.X3 == Approx(1 / std::sqrt(12.0)));
  CHECK(j.Xcm == Approx(0.5));

  auto p = from_jacobi({0, 0, 0, 2});
  for (double x : p.as_array()) CHECK(x == Approx(1));
  p = from_jacobi({std::sqrt(2.0), 0, 0, 0});
  CHECK(p.x1 == Approx(1));
  CHECK(p.x2 == Approx(-1));
  p = from_jacobi({0, 4 / std::sqrt(6.0), 1 / std::sqrt(12.0), 0.5});
  CHECK(p.x1 == Approx(1));
  CHECK(p.x2 == Approx(1));
  CHECK(p.x3 == Approx(-1));
  CHECK(p.x4 == Approx(0).margin(1e-15));
}

TEST_CASE("Jacobi matrix is orthogonal", "[coords]") {
  const auto J = jacobi_matrix();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += J[k][a] * J[k][b];
      CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) <= 1e-14);
    }
  }
  CHECK(J[0][0] * J[0][0] + J[0][1] * J[0][1] == Approx(1.0));
  double r34 = 0.0;
  for (int k = 0; k < 4; ++k) r34 += J[2][k] * J[3][k];
  CHECK(r34 == Approx(0).margin(1e-15));
  CHECK(std::abs(std::abs(det4(J)) - 1.0) < 1e-14);
}

TEST_CASE("spherical example values", "[coords]") {
  auto s = to_spherical({0, 0, 1, 0});
  CHECK(s.r == Approx(1));
  CHECK(s.theta == Approx(0).margin(1e-15));
  CHECK(s.phi == 0.0);
  s = to_spherical({1, 0, 0, 0});
  CHECK(s.theta == Approx(std::numbers::pi / 2));
  CHECK(s.phi == Approx(0).margin(1e-15));
  s = to_spherical({0, 1, 0, 0});
  CHECK(s.theta == Approx(std::numbers::pi / 2));
  CHECK(s.phi == Approx(std::numbers::pi / 2));
  s = to_spherical({0, -1, 0, 0});
  CHECK(s.phi == Approx(1.5 * std::numbers::pi));
  s = to_spherical({0, 0, -3, 0});
  CHECK(s.theta == Approx(std::numbers::pi));
  CHECK(s.phi == 0.0);
  CHECK_THROWS_AS(to_spherical({0, 0, 0, 5}), DegenerateOrigin);

  auto j = from_spherical({1, std::numbers::pi / 2, std::numbers::pi / 2});
  CHECK(j.X1 == Approx(0).margin(1e-15));
  CHECK(j.X2 == Approx(1));
  CHECK(j.X3 == Approx(0).margin(1e-15));
  j = from_spherical({2, 0, 1.234});
  CHECK(j.X1 == Approx(0).margin(1e-15));
  CHECK(j.X2 == Approx(0).margin(1e-15));
  CHECK(j.X3 == Approx(2));
  j = from_spherical({1, std::numbers::pi / 4, std::numbers::pi / 4});
  CHECK(j.X1 == Approx(0.5));
  CHECK(j.X2 == Approx(0.5));
  CHECK(j.X3 == Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("potential example values", "[coords]") {
  CHECK(potential_particle({1, -1, 0, 0}, {1, 0}) == Approx(1.0));
  CHECK(potential_particle({1, 1, -1, 0}, {1, 0}) == Approx(11.0 / 8.0));
  CHECK(potential_particle({1, 1, 0, 0}, {1, 2}) == Approx(1.0));
  CHECK(potential_jacobi({1, 0, 0, 0}, {1, 0}) == Approx(0.5));
  CHECK(potential_jacobi({0, 1, 0, 0}, {1, 6}) == Approx(1.5));

  CHECK_THROWS_AS(potential_particle({1, 1, 1, 0}, {1, 3}), SingularConfiguration);
  CHECK_THROWS_AS(potential_jacobi({1, 0, 1, 0}, {1, 3}), SingularConfiguration);
  // Without coupling the Wolfes plane is regular.
  CHECK_NOTHROW(potential_particle({1, 1, 1, 0}, {1, 0}));
  CHECK_NOTHROW(potential_jacobi({1, 0, 1, 0}, {1, 0}));
}

TEST_CASE("transform identities over random configurations", "[coords][property]") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> xdist(-5.0, 5.0), wdist(0.2, 5.0), gdist(0.0, 10.0);
  double worst_potential = 0.0, worst_quadratic = 0.0, worst_wolfes = 0.0, worst_round = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const ParticleConfig p{xdist(rng), xdist(rng), xdist(rng), xdist(rng)};
    const ModelParams params(wdist(rng), gdist(rng));
    const JacobiConfig j = to_jacobi(p);

    worst_potential = std::max(worst_potential, rel(potential_particle(p, params), potential_jacobi(j, params)));

    const auto x = p.as_array();
    double pair_sum = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) pair_sum += (x[a] - x[b]) * (x[a] - x[b]);
    worst_quadratic =
        std::max(worst_quadratic, rel(pair_sum, 4.0 * (j.X1 * j.X1 + j.X2 * j.X2 + j.X3 * j.X3)));
    const double w = p.x1 + p.x2 - 2.0 * p.x3;
    worst_wolfes = std::max(worst_wolfes, rel(w * w, 6.0 * j.X2 * j.X2));

    const auto back = from_jacobi(j);
    for (int k = 0; k < 4; ++k) worst_round = std::max(worst_round, std::abs(back.as_array()[k] - x[k]));

    const auto s = to_spherical(j);
    const auto js = from_spherical(s);
    CHECK(s.theta >= 0.0);
    CHECK(s.theta <= std::numbers::pi);
    CHECK(s.phi >= 0.0);
    CHECK(s.phi < 2.0 * std::numbers::pi);
    worst_round = std::max({worst_round, std::abs(js.X1 - j.X1), std::abs(js.X2 - j.X2), std::abs(js.X3 - j.X3)});
  }
  INFO("potential " << worst_potential << " quadratic " << worst_quadratic << " wolfes " << worst_wolfes);
  CHECK(worst_potential <= 1e-12);
  CHECK(worst_quadratic <= 1e-12);
  CHECK(worst_wolfes <= 1e-12);
  CHECK(worst_round <= 1e-13);
}
