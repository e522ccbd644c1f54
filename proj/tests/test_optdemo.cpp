#include <sstream>

#include "grassgeo/optdemo.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using grassgeo::testing::dist;

namespace {

// U diag(values) U* for a random unitary U.
Matrix with_spectrum(Rng& rng, const std::vector<double>& values, Field f) {
  const Matrix u = random_orthonormal_frame(rng, values.size(), values.size(), f);
  return hermitian_part(u * Matrix::diagonal(values, f) * adjoint(u));
}

double top_sum(const std::vector<double>& ascending, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = ascending.size() - n; i < ascending.size(); ++i) s += ascending[i];
  return s;
}

void check_monotone(const DescentTrace& trace) {
  for (std::size_t k = 1; k < trace.iterates.size(); ++k) {
    CHECK(trace.iterates[k].objective >= trace.iterates[k - 1].objective);
  }
}

}  // namespace

TEST_CASE("diag(3,2,1) with n = 1 converges to e1 from many starts") {
  const Matrix a = Matrix::diagonal(std::vector<double>{3.0, 2.0, 1.0});
  const Matrix target = Matrix::diagonal(std::vector<double>{1.0, 0.0, 0.0});
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CAPTURE(seed);
    DescentConfig cfg;
    cfg.seed = seed;
    const DescentTrace trace = dominant_subspace(a, 1, cfg);
    CHECK(trace.status == DescentStatus::converged);
    CHECK(dist(trace.final_point.proj(), target) <= 1e-6);
    CHECK(std::abs(hs_inner(trace.final_point.proj(), a) - 3.0) <= 1e-8);
    check_monotone(trace);
  }
}

TEST_CASE("identity is stationary everywhere") {
  DescentConfig cfg;
  const DescentTrace trace = dominant_subspace(Matrix::identity(4), 2, cfg);
  CHECK(trace.status == DescentStatus::converged);
  CHECK(trace.iterates.size() == 1);
  CHECK(trace.iterates[0].grad_norm <= 1e-12);
  CHECK(trace.iterates[0].objective == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("random spectra reach the dominant subspace") {
  Rng rng(2024);
  for (Field f : {Field::real, Field::complex}) {
    for (int k = 0; k < 10; ++k) {
      std::vector<double> ev(6);
      double x = -1.0;
      for (auto& v : ev) v = (x += 0.1 + 0.5 * rng.uniform());
      const Matrix a = with_spectrum(rng, ev, f);
      DescentConfig cfg;
      cfg.seed = static_cast<std::uint64_t>(k);
      const DescentTrace trace = dominant_subspace(a, 2, cfg);
      CHECK(trace.status == DescentStatus::converged);
      CHECK(std::abs(hs_inner(trace.final_point.proj(), a) - top_sum(ev, 2)) <= 1e-8);
      CHECK(dist(trace.final_point.proj(), dominant_projection(a, 2).proj()) <= 1e-6);
      CHECK(projection_defect(trace.final_point.proj()) <= 1e-9);
      check_monotone(trace);
    }
  }
}

TEST_CASE("gradient vanishes at the eigensolver answer") {
  Rng rng(5);
  for (Field f : {Field::real, Field::complex}) {
    const Matrix a = random_hermitian(rng, 7, f);
    const GrassmannPoint top = dominant_projection(a, 3);
    CHECK(frobenius_norm(tangent_project(top, a).mat()) <= 1e-10);
  }
}

TEST_CASE("a degenerate gap is reported rather than thrown") {
  // lambda_1 = lambda_2 with n = 1: every line in the top eigenspace is
  // optimal. The run must finish normally and still reach the top value.
  const Matrix a = Matrix::diagonal(std::vector<double>{2.0, 2.0, 1.0});
  DescentConfig cfg;
  cfg.max_iters = 50;
  const DescentTrace trace = dominant_subspace(a, 1, cfg);
  CHECK(std::abs(trace.iterates.back().objective - 2.0) <= 1e-6);
  check_monotone(trace);
}

TEST_CASE("input validation") {
  DescentConfig cfg;
  CHECK_THROWS_AS(dominant_subspace(Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}}), 1, cfg), DomainError);
  CHECK_THROWS_AS(dominant_subspace(Matrix::identity(3), 0, cfg), DomainError);
  CHECK_THROWS_AS(dominant_subspace(Matrix::identity(3), 4, cfg), DomainError);
  CHECK_THROWS_AS(dominant_subspace(Matrix(2, 3), 1, cfg), ShapeError);
  cfg.step_size = 0.0;
  CHECK_THROWS_AS(dominant_subspace(Matrix::identity(3), 1, cfg), DomainError);
}

TEST_CASE("trace CSV is deterministic") {
  Rng rng(9);
  const Matrix a = random_hermitian(rng, 5, Field::real);
  DescentConfig cfg;
  cfg.seed = 17;
  std::ostringstream first;
  std::ostringstream second;
  write_trace_csv(first, dominant_subspace(a, 2, cfg));
  write_trace_csv(second, dominant_subspace(a, 2, cfg));
  CHECK(first.str() == second.str());
  CHECK(first.str().rfind("iter,objective,grad_norm\n0,", 0) == 0);
}
