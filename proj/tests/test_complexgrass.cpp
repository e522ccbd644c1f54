#include <cmath>

#include "grassgeo/complexgrass.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using grassgeo::testing::diag_point;
using grassgeo::testing::dist;

namespace {

constexpr Scalar kI(0.0, 1.0);

}  // namespace

TEST_CASE("J on the swap tangent at diag(1,0)") {
  const GrassmannPoint xi = diag_point({1.0, 0.0}, Field::complex);
  const Matrix eta = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}).with_field(Field::complex);
  const Matrix expect = Matrix::from_rows({{Scalar(0.0), -kI}, {kI, Scalar(0.0)}});
  CHECK(j_apply(xi, eta).mat() == expect);
  CHECK(frobenius_norm(j_apply(xi, Matrix::zeros(2, 2, Field::complex)).mat()) == 0.0);

  const auto ev = evaluate_complex_structure(xi, eta);
  CHECK(ev.input == eta);
  CHECK(ev.output.mat() == expect);
}

TEST_CASE("J squares to minus identity and is an isometry") {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const GrassmannPoint xi = random_point(rng, 2 + k % 5, 1 + k % 2, Field::complex);
    const Matrix a = random_tangent(rng, xi);
    const Matrix b = random_tangent(rng, xi);
    const Matrix ja = j_apply(xi, a).mat();
    CHECK(dist(j_apply(xi, ja).mat(), -1.0 * a) <= 1e-12 * std::max(1.0, frobenius_norm(a)));
    CHECK(std::abs(hs_inner(ja, j_apply(xi, b).mat()) - hs_inner(a, b)) <= 1e-12);
  }
}

TEST_CASE("J needs the complex field") {
  const GrassmannPoint xi = diag_point({1.0, 0.0});
  CHECK_THROWS_AS(j_apply(xi, Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}})), DomainError);
}

TEST_CASE("nabla J vanishes") {
  Rng rng(5);
  const GrassmannPoint xi0 = random_point(rng, 3, 1, Field::complex);
  CHECK(nabla_j_defect(xi0, Matrix::zeros(3, 3, Field::complex), random_tangent(rng, xi0)) == 0.0);
  for (int k = 0; k < 50; ++k) {
    const GrassmannPoint xi = random_point(rng, 3 + k % 4, 1 + k % 2, Field::complex);
    CHECK(nabla_j_defect(xi, random_tangent(rng, xi), random_tangent(rng, xi)) <= 1e-10);
  }
}

TEST_CASE("nabla J transport oracle is small") {
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const GrassmannPoint xi = random_point(rng, 4, 2, Field::complex);
    const Matrix a = random_tangent(rng, xi);
    const Matrix b = random_tangent(rng, xi);
    CHECK(frobenius_norm(nabla_j_transport_oracle(xi, a, b)) <= 1e-5);
  }
}

TEST_CASE("holomorphic chart defect") {
  const auto f = SubspaceFrame::from_columns(
      Matrix::from_rows({{1.0}, {0.0}, {0.0}}).with_field(Field::complex));
  const GrassmannPoint base = point_from_frame(f);
  Matrix eta(3, 3, Field::complex);
  eta(1, 0) = Scalar(2.0, -1.0);
  eta(0, 1) = Scalar(2.0, 1.0);
  CHECK(holomorphic_chart_defect(f, base, eta) <= 1e-12);
  CHECK(holomorphic_chart_defect(f, base, Matrix::zeros(3, 3, Field::complex)) == 0.0);

  Rng rng(7);
  int used = 0;
  for (int k = 0; k < 60; ++k) {
    const GrassmannPoint xi = random_point(rng, 5, 2, Field::complex);
    const SubspaceFrame chart = frame_from_point(random_point(rng, 5, 2, Field::complex));
    if (!chart_domain_contains(chart, xi, 1e-2)) continue;
    ++used;
    CHECK(holomorphic_chart_defect(chart, xi, random_tangent(rng, xi)) <= 1e-8);
  }
  CHECK(used > 20);
}

TEST_CASE("realification") {
  const Matrix z = Matrix::from_rows({{Scalar(1.0, 2.0)}});
  CHECK(realify(z) == Matrix::from_rows({{1.0, -2.0}, {2.0, 1.0}}));
  CHECK(realified_unit(1) == Matrix::from_rows({{0.0, -1.0}, {1.0, 0.0}}));

  Rng rng(8);
  const Matrix a = random_gaussian(rng, 3, 2, Field::complex);
  const Matrix b = random_gaussian(rng, 2, 4, Field::complex);
  CHECK(dist(realify(a * b), realify(a) * realify(b)) <= 1e-14);
  CHECK(dist(realify(adjoint(a)), adjoint(realify(a))) == 0.0);
  CHECK(realified_adjoint_defect(a) <= 1e-12);
  CHECK(realified_projection_defect(random_orthonormal_frame(rng, 4, 2, Field::complex)) <= 1e-12);
}

TEST_CASE("complex Grassmannian sits totally geodesically in the real one") {
  Rng rng(9);
  const GrassmannPoint xi0 = random_point(rng, 2, 1, Field::complex);
  const auto zero = totally_geodesic_defect_complex(xi0, Matrix::zeros(2, 2, Field::complex),
                                                    random_tangent(rng, xi0));
  CHECK(zero.connection == 0.0);
  for (int k = 0; k < 30; ++k) {
    const GrassmannPoint xi = random_point(rng, 2 + k % 4, 1, Field::complex);
    const auto d = totally_geodesic_defect_complex(xi, random_tangent(rng, xi), random_tangent(rng, xi));
    CHECK(d.connection <= 1e-10);
    CHECK(d.geodesic_commutator <= 1e-9);
    CHECK(d.geodesic_agreement <= 1e-9);
  }
}

TEST_CASE("complex dimension count") {
  Rng rng(10);
  for (std::size_t big_n = 1; big_n <= 6; ++big_n) {
    for (std::size_t n = 0; n <= big_n; ++n) {
      const GrassmannPoint xi = random_point(rng, big_n, n, Field::complex);
      CHECK(tangent_projection_rank(xi) == 2 * n * (big_n - n));
    }
  }
}
