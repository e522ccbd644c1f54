#pragma once

// The Grassmann manifold embedded in the self-adjoint operators: every
// subspace F of E is represented by its orthogonal projection, and tangent
// vectors at a projection xi are the self-adjoint eta with
// eta*xi + xi*eta = eta. All geometric objects below are formulas on these
// N x N matrices; subspace frames are derived views used by charts.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grassgeo/numkernel.hpp"

namespace grassgeo {

/// An orthogonal projection xi = xi* = xi^2 of rank n on an N-dimensional
/// real or complex space.
class GrassmannPoint {
 public:
  /// Validates self-adjointness, idempotency and the {0,1} spectrum with
  /// the default validation tolerance. Never modifies `proj`.
  static GrassmannPoint from_matrix(Matrix proj);
  static GrassmannPoint from_matrix(Matrix proj, double tol);

  const Matrix& proj() const noexcept { return proj_; }
  std::size_t dim() const noexcept { return proj_.rows(); }
  std::size_t rank() const noexcept { return rank_; }
  Field field() const noexcept { return proj_.field(); }

  /// 2 xi - Id, the reflection that fixes xi(E) and negates its complement.
  Matrix reflection() const;

 private:
  GrassmannPoint(Matrix proj, std::size_t rank) : proj_(std::move(proj)), rank_(rank) {}

  Matrix proj_;
  std::size_t rank_ = 0;
};

/// max(||m* - m||_F / max(1, ||m||_F), ||m m - m||_F).
double projection_defect(const Matrix& m);
bool is_projection(const Matrix& m, double tol);

/// Eigendecomposes `m`, snaps every eigenvalue to 0 or 1 (threshold 1/2)
/// and rebuilds the projection. Used inside iterative processes only.
GrassmannPoint renormalize(const Matrix& m);

/// A self-adjoint eta anchored at a Grassmann point, with
/// eta*xi + xi*eta = eta.
class TangentVector {
 public:
  /// Throws DomainError naming the violated condition.
  static TangentVector make(GrassmannPoint base, Matrix mat);

  const GrassmannPoint& base() const noexcept { return base_; }
  const Matrix& mat() const noexcept { return mat_; }

 private:
  TangentVector(GrassmannPoint base, Matrix mat) : base_(std::move(base)), mat_(std::move(mat)) {}

  GrassmannPoint base_;
  Matrix mat_;
};

/// Describes why `eta` is not tangent at `xi`, or nullopt if it is.
/// The tolerance is relative to max(1, ||eta||_F).
std::optional<std::string> tangent_violation(const GrassmannPoint& xi, const Matrix& eta,
                                             double tol);
bool is_tangent(const GrassmannPoint& xi, const Matrix& eta, double tol);
/// Self-adjoint and commuting with xi.
bool is_normal(const GrassmannPoint& xi, const Matrix& eta, double tol);

/// The six equivalent characterizations of a tangent vector, evaluated
/// independently for a self-adjoint eta:
///   a: eta equals its tangent projection
///   b: eta maps F into its complement and the complement into F
///   c: eta xi + xi eta = eta
///   d: eta xi = (Id - xi) eta
///   e: eta (Id - xi) = xi eta
///   f: eta anticommutes with 2 xi - Id
struct TangentConditions {
  bool a = false;
  bool b = false;
  bool c = false;
  bool d = false;
  bool e = false;
  bool f = false;

  bool agree() const { return a == b && b == c && c == d && d == e && e == f; }
};

TangentConditions tangent_conditions(const GrassmannPoint& xi, const Matrix& eta, double tol);

struct TangentNormalSplit {
  TangentVector tangent;
  Matrix normal;
  /// True when the input was not self-adjoint and was replaced by its
  /// Hermitian part before splitting.
  bool symmetrized = false;
};

/// tangent = (Id - xi) eta xi + xi eta (Id - xi); normal = eta - tangent.
TangentNormalSplit split_tangent_normal(const GrassmannPoint& xi, const Matrix& eta);
TangentVector tangent_project(const GrassmannPoint& xi, const Matrix& eta);
Matrix normal_project(const GrassmannPoint& xi, const Matrix& eta);

/// Orthonormal columns spanning F, plus a cached orthonormal basis of the
/// orthogonal complement.
class SubspaceFrame {
 public:
  /// Validates orthonormality and derives the complement deterministically
  /// from the eigenvectors of Id - U U*.
  static SubspaceFrame from_columns(Matrix frame);
  static SubspaceFrame from_columns(Matrix frame, Matrix complement);

  const Matrix& frame() const noexcept { return frame_; }
  const Matrix& complement() const noexcept { return complement_; }
  std::size_t dim() const noexcept { return frame_.rows(); }
  std::size_t rank() const noexcept { return frame_.cols(); }
  Field field() const noexcept { return frame_.field(); }

 private:
  friend SubspaceFrame frame_from_point(const GrassmannPoint& xi);
  SubspaceFrame(Matrix frame, Matrix complement)
      : frame_(std::move(frame)), complement_(std::move(complement)) {}

  Matrix frame_;
  Matrix complement_;
};

GrassmannPoint point_from_frame(const SubspaceFrame& frame);
/// Eigenvectors of xi with eigenvalue >= 1/2 span the frame, the rest the
/// complement. Throws DomainError if an eigenvalue is farther than 0.1 from
/// {0, 1}.
SubspaceFrame frame_from_point(const GrassmannPoint& xi);

/// Real dimension of the manifold at xi: n(N-n), doubled over the complex
/// field.
std::size_t dimension_at(const GrassmannPoint& xi);

/// Orthonormal (real Hilbert-Schmidt) basis of the tangent space built from
/// the off-diagonal block form in the frame of xi.
std::vector<TangentVector> tangent_basis(const GrassmannPoint& xi);

/// Numerical rank of the tangent projection applied to a spanning set of
/// the self-adjoint matrices.
std::size_t tangent_projection_rank(const GrassmannPoint& xi, double tol = 1e-8);

/// Coordinates of a point in the graph chart based at F: the matrix of the
/// map F -> F-perp whose graph is the subspace.
struct ChartCoord {
  SubspaceFrame chart_base;
  Matrix coord;  // (N-n) x n in the (frame, complement) bases
};

/// True iff the smallest singular value of F* U exceeds tol, where U spans
/// xi(E). Throws ShapeError on a rank mismatch.
bool chart_domain_contains(const SubspaceFrame& f, const GrassmannPoint& xi, double tol = 1e-8);
ChartCoord chart_forward(const SubspaceFrame& f, const GrassmannPoint& xi);
GrassmannPoint chart_inverse(const ChartCoord& c);
/// Differential of chart_forward at xi applied to a tangent eta, in chart
/// coordinates.
Matrix chart_differential(const SubspaceFrame& f, const GrassmannPoint& xi, const Matrix& eta);

/// Canonical (Levi-Civita) connection form
/// theta(eta, alpha) = (Id - 2xi) eta alpha + alpha eta (Id - 2xi).
/// The result is normal at xi.
Matrix connection(const GrassmannPoint& xi, const Matrix& eta, const Matrix& alpha);

/// R(alpha, beta, eta) = eta alpha beta - eta beta alpha + beta alpha eta - alpha beta eta.
TangentVector curvature(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                        const Matrix& eta);

/// 2<ab, ab> - 2<ab, ba>; nonnegative, zero iff alpha and beta commute.
double sectional_riem(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta);

struct SectionalCurvature {
  double riem = 0.0;
  double normalized = 0.0;  // riem / (|a|^2 |b|^2 - <a,b>^2)
};

/// Throws DomainError when the Gram determinant is <= 1e-12.
SectionalCurvature sectional(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta);

/// Closed form (N - 2)/2 <alpha, beta>. Real field only.
double ricci(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta);
/// sum_i <R(alpha, e_i, beta), e_i> over tangent_basis(xi). Any field.
double ricci_trace_oracle(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta);

/// Closed-form geodesic through xi with initial velocity eta:
///   f(t) = (Id + (2xi - Id) cos(2t eta) + sin(2t eta)) / 2,
///   f'(t) = (cos(2t eta) - (2xi - Id) sin(2t eta)) eta.
/// The eigendecomposition of eta is computed once and reused for every t.
class Geodesic {
 public:
  Geodesic(const GrassmannPoint& xi, const Matrix& eta);

  GrassmannPoint point(double t) const;
  TangentVector velocity(double t) const;
  /// Unvalidated matrix forms, for use inside integrators.
  Matrix point_matrix(double t) const;
  Matrix velocity_matrix(double t) const;
  /// f(t) - xi written as sin(2t eta)/2 - (2xi - Id) sin^2(t eta), which
  /// stays accurate when the displacement is tiny.
  Matrix displacement(double t) const;

  const GrassmannPoint& start() const noexcept { return start_; }
  const Matrix& initial_velocity() const noexcept { return eta_; }

 private:
  GrassmannPoint start_;
  Matrix eta_;
  Matrix reflection_;
  EigenDecomposition eig_;
  bool trivial_ = false;
};

GrassmannPoint geodesic(const GrassmannPoint& xi, const Matrix& eta, double t);
TangentVector geodesic_velocity(const GrassmannPoint& xi, const Matrix& eta, double t);

/// Geodesic symmetry about pi: (Id - 2pi) xi (Id - 2pi).
GrassmannPoint symmetry(const GrassmannPoint& pi, const GrassmannPoint& xi);

/// Metric connection of the tautological bundle: eta(w) for w in xi(E).
Matrix tauto_connection(const GrassmannPoint& xi, const Matrix& w, const Matrix& eta);
/// beta(alpha(w)) - alpha(beta(w)); lies in xi(E).
Matrix tauto_curvature(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                       const Matrix& w);

/// Transports w0 along the geodesic t -> f(t) by RK4 on
/// W' = theta_{f(s)}(W, f'(s)), re-projecting W onto the tangent space
/// after every step.
TangentVector parallel_transport(const GrassmannPoint& xi, const Matrix& eta, const Matrix& w0,
                                 double t, int steps);

/// Projection onto the span of a random orthonormal n-frame.
GrassmannPoint random_point(Rng& rng, std::size_t n_ambient, std::size_t rank, Field field);
/// Tangent projection of a random self-adjoint matrix; exactly zero when
/// the tangent space is trivial (rank 0 or N).
Matrix random_tangent(Rng& rng, const GrassmannPoint& xi);

namespace detail {

// Raw formulas without validation, shared by integrators that evaluate them
// at intermediate (not exactly tangent) states.
Matrix tangent_projection_formula(const Matrix& xi, const Matrix& eta);
Matrix connection_formula(const Matrix& xi, const Matrix& eta, const Matrix& alpha);

void require_tangent(const GrassmannPoint& xi, const Matrix& eta, const char* what);

}  // namespace detail

}  // namespace grassgeo
