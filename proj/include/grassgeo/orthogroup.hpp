#pragma once

#include <cstddef>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

/// An orthogonal (real) or unitary (complex) matrix.
class OrthPoint {
 public:
  /// Throws DomainError if ||m* m - Id||_F exceeds the validation tolerance.
  static OrthPoint from_matrix(Matrix m);

  const Matrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.rows(); }
  Field field() const noexcept { return mat_.field(); }

 private:
  explicit OrthPoint(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

/// The fixed projection pi defining Phi(xi) = xi pi xi*.
struct SubmersionSetup {
  GrassmannPoint h_projection;
};

/// ||alpha* xi + xi* alpha||_F <= tol * max(1, ||alpha||_F).
bool o_is_tangent(const OrthPoint& xi, const Matrix& alpha, double tol);
/// (lambda - xi lambda* xi) / 2.
Matrix o_project(const OrthPoint& xi, const Matrix& lambda);
/// -(beta alpha* xi + xi alpha* beta) / 2.
Matrix o_connection(const OrthPoint& xi, const Matrix& alpha, const Matrix& beta);

GrassmannPoint submersion(const SubmersionSetup& setup, const OrthPoint& xi);
/// alpha pi xi* + xi pi alpha*.
TangentVector submersion_differential(const SubmersionSetup& setup, const OrthPoint& xi,
                                      const Matrix& alpha);
/// Adjoint of the differential: 2 beta xi pi - beta xi.
Matrix submersion_coadjoint(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& beta);

/// alpha - D*(D(alpha)): the component of alpha in the kernel of the
/// differential.
Matrix vertical_project(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& alpha);

/// Norm of alpha pi beta* + beta pi alpha* + lambda pi xi* + xi pi lambda*
/// with lambda = o_connection(xi, alpha, beta), for vertical alpha, beta.
/// Throws DomainError if either input is not vertical within 1e-9.
double fibre_geodesic_defect(const SubmersionSetup& setup, const OrthPoint& xi, const Matrix& alpha,
                             const Matrix& beta);

/// Nearest orthogonal/unitary matrix m (m* m)^{-1/2}.
OrthPoint polar_snap(const Matrix& m);

/// Geodesic of the group from (xi, alpha) by RK4 on xi'' = o_connection(xi', xi'), snapping back
/// to the group and re-projecting the velocity after every step.
OrthPoint o_geodesic(const OrthPoint& xi, const Matrix& alpha, double t, int steps);

/// Largest ||Phi(o_geodesic(xi, D*(beta), t)) - geodesic(Phi(xi), beta, t)||_F over
/// `samples` equally spaced t in (0, t_max], integrating once with `steps`
/// RK4 steps in total.
double horizontal_geodesic_defect(const SubmersionSetup& setup, const OrthPoint& xi,
                                  const Matrix& beta, double t_max, int samples, int steps);

/// Largest change of the inner product of two tangent vectors under left
/// and right translation by g, together with the tangency defect of the
/// translated vectors.
double bi_invariance_defect(const OrthPoint& xi, const Matrix& alpha, const Matrix& beta,
                            const OrthPoint& g);

OrthPoint random_orth_point(Rng& rng, std::size_t n, Field field);
Matrix random_o_tangent(Rng& rng, const OrthPoint& xi);

}  // namespace grassgeo
