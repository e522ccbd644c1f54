#include <cmath>

#include "grassgeo/oracles.hpp"
#include "grassgeo/orthogroup.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using namespace grassgeo::oracles;
using grassgeo::testing::diag_point;
using grassgeo::testing::dist;
using grassgeo::testing::sym_unit;

namespace {

const Matrix kSwap = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});

double rel(const Matrix& got, const Matrix& want) {
  return dist(got, want) / std::max(1.0, frobenius_norm(want));
}

}  // namespace

TEST_CASE("directional derivative of simple maps") {
  Rng rng(1);
  const Matrix x = random_gaussian(rng, 3, 3, Field::real);
  const Matrix v = random_gaussian(rng, 3, 3, Field::real);
  CHECK(dist(directional_derivative([](const Matrix& m) { return m; }, x, v), v) <= 1e-10);
  CHECK(frobenius_norm(directional_derivative([&](const Matrix&) { return x; }, x, v)) == 0.0);
}

TEST_CASE("central differences are exact on a quadratic with dyadic data") {
  // Entries k/8 and h = 2^-17 keep every intermediate exactly representable.
  const Matrix v = Matrix::from_rows({{0.125, -0.5}, {0.75, 0.25}});
  FdConfig cfg;
  cfg.h1 = std::ldexp(1.0, -17);
  const Matrix d = directional_derivative([](const Matrix& m) { return m * m; },
                                          Matrix::identity(2), v, cfg);
  CHECK(d == 2.0 * v);
}

TEST_CASE("FdConfig validation") {
  FdConfig cfg;
  cfg.h1 = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("conjugation curve passes through the point with the given velocity") {
  Rng rng(2);
  const GrassmannPoint xi = random_point(rng, 5, 2, Field::complex);
  const Matrix eta = random_tangent(rng, xi);
  const ConjugationCurve c(xi.proj(), eta);
  CHECK(dist(c(0.0), xi.proj()) <= 1e-14);
  CHECK(rel(curve_derivative([&](double s) { return c(s); }, 0.0), eta) <= 1e-8);
  CHECK(projection_defect(c(0.9)) <= 1e-12);
}

TEST_CASE("connection oracle against the closed form") {
  const GrassmannPoint line = diag_point({1.0, 0.0});
  CHECK(frobenius_norm(connection_oracle(line, Matrix::zeros(2, 2), kSwap)) == 0.0);
  CHECK(rel(connection_oracle(line, kSwap, kSwap), connection(line, kSwap, kSwap)) <= 1e-6);

  Rng rng(3);
  for (Field f : {Field::real, Field::complex}) {
    for (int k = 0; k < 20; ++k) {
      const GrassmannPoint xi = random_point(rng, 5, 2, f);
      const Matrix eta = random_tangent(rng, xi);
      const Matrix alpha = random_tangent(rng, xi);
      CHECK(rel(connection_oracle(xi, eta, alpha), connection(xi, eta, alpha)) <= 1e-6);
    }
  }
}

TEST_CASE("metric connection oracle on the tautological bundle") {
  const GrassmannPoint line = diag_point({1.0, 0.0});
  Matrix w(2, 1);
  w(0, 0) = 1.0;
  CHECK(frobenius_norm(metric_connection_oracle(line, w, Matrix::zeros(2, 2))) <= 1e-12);
  CHECK(rel(metric_connection_oracle(line, w, kSwap), kSwap * w) <= 1e-6);

  Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    const GrassmannPoint xi = random_point(rng, 4, 2, Field::real);
    const Matrix eta = random_tangent(rng, xi);
    const Matrix w2 = xi.proj() * random_gaussian(rng, 4, 1, Field::real);
    CHECK(rel(metric_connection_oracle(xi, w2, eta), tauto_connection(xi, w2, eta)) <= 1e-6);
  }
}

TEST_CASE("curvature oracle") {
  const GrassmannPoint xi = diag_point({1.0, 0.0, 0.0});
  const Matrix a = sym_unit(3, 0, 1);
  const Matrix b = sym_unit(3, 0, 2);
  const auto theta = grassmann_connection_extension();
  CHECK(frobenius_norm(curvature_oracle(theta, xi.proj(), a, a, b)) <= 1e-12);
  CHECK(dist(curvature_oracle(theta, xi.proj(), a, b, a), b) <= 1e-5);

  Rng rng(5);
  for (Field f : {Field::real, Field::complex}) {
    for (int k = 0; k < 10; ++k) {
      const GrassmannPoint p = random_point(rng, 5, 2, f);
      const Matrix u = random_tangent(rng, p);
      const Matrix v = random_tangent(rng, p);
      const Matrix e = random_tangent(rng, p);
      CHECK(dist(curvature_oracle(theta, p.proj(), u, v, e), curvature(p, u, v, e).mat()) <= 1e-5);

      const Matrix w = p.proj() * random_gaussian(rng, 5, 1, f);
      CHECK(dist(curvature_oracle(tautological_connection_extension(), p.proj(), u, v, w),
                 tauto_curvature(p, u, v, w)) <= 1e-6);
    }
  }
}

TEST_CASE("group connection and submersion differential oracles") {
  Rng rng(6);
  for (Field f : {Field::real, Field::complex}) {
    for (int k = 0; k < 10; ++k) {
      const OrthPoint xi = random_orth_point(rng, 4, f);
      const Matrix a = random_o_tangent(rng, xi);
      const Matrix b = random_o_tangent(rng, xi);
      CHECK(rel(o_connection_oracle(xi.mat(), a, b), o_connection(xi, a, b)) <= 1e-6);

      const SubmersionSetup setup{random_point(rng, 4, 2, f)};
      CHECK(rel(submersion_differential_oracle(setup.h_projection.proj(), xi.mat(), a),
                submersion_differential(setup, xi, a).mat()) <= 1e-6);
    }
  }
}

TEST_CASE("chart differential oracle") {
  Rng rng(7);
  int used = 0;
  for (Field f : {Field::real, Field::complex}) {
    for (int k = 0; k < 20; ++k) {
      const GrassmannPoint xi = random_point(rng, 5, 2, f);
      const SubspaceFrame chart = frame_from_point(random_point(rng, 5, 2, f));
      if (!chart_domain_contains(chart, xi, 1e-2)) continue;
      ++used;
      const Matrix eta = random_tangent(rng, xi);
      CHECK(rel(chart_differential_oracle(chart, xi, eta), chart_differential(chart, xi, eta)) <=
            1e-6);
    }
  }
  CHECK(used > 10);
}

TEST_CASE("geodesic ODE oracle") {
  const GrassmannPoint line = diag_point({1.0, 0.0});
  CHECK(geodesic_ode_oracle(line, Matrix::zeros(2, 2), 1.0, 10).proj() == line.proj());
  CHECK(dist(geodesic_ode_oracle(line, kSwap, 0.5, 1000).proj(), geodesic(line, kSwap, 0.5).proj()) <=
        1e-7);

  Rng rng(8);
  for (int k = 0; k < 5; ++k) {
    const GrassmannPoint xi = random_point(rng, 4, 2, Field::real);
    const Matrix eta = random_tangent(rng, xi);
    CHECK(dist(geodesic_ode_oracle(xi, eta, 1.0, 1000).proj(), geodesic(xi, eta, 1.0).proj()) <= 1e-6);
  }
}

TEST_CASE("fixture names") {
  CHECK(fixture_name("connection", 4, 2, 7) == "connection_4_2_7.txt");
  CHECK_THROWS(make_fixture("no_such_check", 3, 1, 1));
}
