#include "grassgeo/orthogroup.hpp"

#include <algorithm>
#include <cmath>

namespace grassgeo {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, frobenius_norm(m)); }

void require_same_shape(const OrthPoint& xi, const Matrix& m, const char* what) {
  if (m.rows() != xi.dim() || m.cols() != xi.dim()) {
    throw ShapeError(std::string(what) + ": expected a " + std::to_string(xi.dim()) + "x" +
                     std::to_string(xi.dim()) + " matrix");
  }
}

void require_o_tangent(const OrthPoint& xi, const Matrix& alpha, const char* what) {
  require_same_shape(xi, alpha, what);
  if (!o_is_tangent(xi, alpha, default_tolerances().validation)) {
    throw DomainError(std::string(what) + ": alpha* xi + xi* alpha != 0 (not tangent to the group)");
  }
}

void require_setup(const SubmersionSetup& setup, const OrthPoint& xi, const char* what) {
  if (setup.h_projection.dim() != xi.dim() || setup.h_projection.field() != xi.field()) {
    throw ShapeError(std::string(what) + ": projection and group element live in different spaces");
  }
}

Matrix connection_formula(const Matrix& x, const Matrix& alpha, const Matrix& beta) {
  const Matrix a_star = adjoint(alpha);
  return -0.5 * (beta * a_star * x + x * a_star * beta);
}

}  // namespace

OrthPoint OrthPoint::from_matrix(Matrix m) {
  if (!m.is_square()) throw ShapeError("OrthPoint: matrix is not square");
  const double defect = frobenius_norm(adjoint(m) * m - Matrix::identity(m.rows(), m.field()));
  if (defect > default_tolerances().validation) {
    throw DomainError("OrthPoint: ||xi* xi - Id||_F = " + format_double(defect) +
                      " exceeds the validation tolerance");
  }
  return OrthPoint(std::move(m));
}

bool o_is_tangent(const OrthPoint& xi, const Matrix& alpha, double tol) {
  require_same_shape(xi, alpha, "o_is_tangent");
  const Matrix& x = xi.mat();
  return frobenius_norm(adjoint(alpha) * x + adjoint(x) * alpha) <= tol * scale_of(alpha);
}

Matrix o_project(const OrthPoint& xi, const Matrix& lambda) {
  require_same_shape(xi, lambda, "o_project");
  const Matrix& x = xi.mat();
  return 0.5 * (lambda - x * adjoint(lambda) * x);
}

Matrix o_connection(const OrthPoint& xi, const Matrix& alpha, const Matrix& beta) {
  require_o_tangent(xi, alpha, "o_connection");
  require_o_tangent(xi, beta, "o_connection");
  return connection_formula(xi.mat(), alpha, beta);
}

GrassmannPoint submersion(const SubmersionSetup& setup, const OrthPoint& xi) {
  require_setup(setup, xi, "submersion");
  const Matrix& x = xi.mat();
  return GrassmannPoint::from_matrix(x * setup.h_projection.proj() * adjoint(x));
}

TangentVector submersion_differential(const SubmersionSetup& setup, const OrthPoint& xi,
                                      const Matrix& alpha) {
  require_setup(setup, xi, "submersion_differential");
  require_o_tangent(xi, alpha, "submersion_differential");
  const Matrix& x = xi.mat();
  const Matrix& pi = setup.h_projection.proj();
  return TangentVector::make(submersion(setup, xi),
                             alpha * pi * adjoint(x) + x * pi * adjoint(alpha));
}

Matrix submersion_coadjoint(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& beta) {
  const GrassmannPoint image = submersion(setup, xi);
  detail::require_tangent(image, beta, "submersion_coadjoint");
  const Matrix bx = beta * xi.mat();
  return 2.0 * (bx * setup.h_projection.proj()) - bx;
}

Matrix vertical_project(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& alpha) {
  const Matrix d = submersion_differential(setup, xi, alpha).mat();
  return alpha - submersion_coadjoint(setup, xi, d);
}

double fibre_geodesic_defect(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& alpha,
                             const Matrix& beta) {
  for (const Matrix* v : {&alpha, &beta}) {
    const double d = frobenius_norm(submersion_differential(setup, xi, *v).mat());
    if (d > 1e-9 * scale_of(*v)) {
      throw DomainError("fibre_geodesic_defect: input is not vertical (||D Phi|| = " +
                        format_double(d) + ")");
    }
  }
  const Matrix& x = xi.mat();
  const Matrix& pi = setup.h_projection.proj();
  const Matrix lambda = connection_formula(x, alpha, beta);
  const Matrix sum = alpha * pi * adjoint(beta) + beta * pi * adjoint(alpha) +
                     lambda * pi * adjoint(x) + x * pi * adjoint(lambda);
  return frobenius_norm(sum);
}

OrthPoint polar_snap(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("polar_snap: matrix is not square");
  const auto eig = eig_hermitian(adjoint(m) * m);
  if (!eig.eigenvalues.empty() && eig.eigenvalues.front() <= 1e-14) {
    throw DomainError("polar_snap: matrix is singular");
  }
  const Matrix inv_sqrt =
      hermitian_function(eig, [](double v) { return 1.0 / std::sqrt(v); }, m.field());
  return OrthPoint::from_matrix(m * inv_sqrt);
}

namespace {

// Advances (x, v) along the group geodesic by t using `steps` RK4 steps,
// snapping x back to the group and re-projecting v after each one.
void advance_geodesic(Matrix& x, Matrix& v, double t, int steps) {
  const double h = t / steps;
  const auto accel = [](const Matrix& p, const Matrix& w) { return connection_formula(p, w, w); };
  for (int k = 0; k < steps; ++k) {
    const Matrix a1 = accel(x, v);
    const Matrix x2 = x + (0.5 * h) * v;
    const Matrix v2 = v + (0.5 * h) * a1;
    const Matrix a2 = accel(x2, v2);
    const Matrix x3 = x + (0.5 * h) * v2;
    const Matrix v3 = v + (0.5 * h) * a2;
    const Matrix a3 = accel(x3, v3);
    const Matrix x4 = x + h * v3;
    const Matrix v4 = v + h * a3;
    const Matrix a4 = accel(x4, v4);
    x += (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4);
    v += (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    const OrthPoint snapped = polar_snap(x);
    x = snapped.mat();
    v = o_project(snapped, v);
  }
}

}  // namespace

OrthPoint o_geodesic(const OrthPoint& xi, const Matrix& alpha, double t, int steps) {
  if (steps < 1) throw DomainError("o_geodesic: steps must be >= 1");
  require_o_tangent(xi, alpha, "o_geodesic");
  if (t == 0.0) return xi;
  Matrix x = xi.mat();
  Matrix v = alpha;
  advance_geodesic(x, v, t, steps);
  return OrthPoint::from_matrix(std::move(x));
}

double horizontal_geodesic_defect(const SubmersionSetup& setup, const OrthPoint& xi,
                                  const Matrix& beta, double t_max, int samples, int steps) {
  if (samples < 1 || steps < 1) {
    throw DomainError("horizontal_geodesic_defect: samples and steps must be >= 1");
  }
  const Matrix alpha = submersion_coadjoint(setup, xi, beta);
  const Geodesic image_path(submersion(setup, xi), beta);
  const int steps_per_sample = std::max(1, steps / samples);
  Matrix x = xi.mat();
  Matrix v = alpha;
  double worst = 0.0;
  for (int k = 1; k <= samples; ++k) {
    advance_geodesic(x, v, t_max / samples, steps_per_sample);
    const double t = t_max * k / samples;
    const Matrix image = x * setup.h_projection.proj() * adjoint(x);
    worst = std::max(worst, frobenius_norm(image - image_path.point_matrix(t)));
  }
  return worst;
}

double bi_invariance_defect(const OrthPoint& xi, const Matrix& alpha, const Matrix& beta,
                            const OrthPoint& g) {
  require_o_tangent(xi, alpha, "bi_invariance_defect");
  require_o_tangent(xi, beta, "bi_invariance_defect");
  require_same_shape(xi, g.mat(), "bi_invariance_defect");
  const double base = hs_inner(alpha, beta);
  const Matrix& m = g.mat();

  const Matrix left_x = m * xi.mat();
  const Matrix left_a = m * alpha;
  const Matrix left_b = m * beta;
  const Matrix right_x = xi.mat() * m;
  const Matrix right_a = alpha * m;
  const Matrix right_b = beta * m;

  const auto tangency = [](const Matrix& x, const Matrix& a) {
    return frobenius_norm(adjoint(a) * x + adjoint(x) * a);
  };
  return std::max({std::abs(hs_inner(left_a, left_b) - base),
                   std::abs(hs_inner(right_a, right_b) - base), tangency(left_x, left_a),
                   tangency(left_x, left_b), tangency(right_x, right_a),
                   tangency(right_x, right_b)});
}

OrthPoint random_orth_point(Rng& rng, std::size_t n, Field field) {
  return OrthPoint::from_matrix(random_orthonormal_frame(rng, n, n, field));
}

Matrix random_o_tangent(Rng& rng, const OrthPoint& xi) {
  return o_project(xi, random_gaussian(rng, xi.dim(), xi.dim(), xi.field()));
}

}  // namespace grassgeo
