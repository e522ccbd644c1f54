#include <algorithm>
#include <cmath>
#include <numbers>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

namespace {

double scale_of(const Matrix& m) { return std::max(1.0, frobenius_norm(m)); }

void require_square_match(const GrassmannPoint& xi, const Matrix& m, const char* what) {
  if (m.rows() != xi.dim() || m.cols() != xi.dim()) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(xi.dim()) + "x" +
                     std::to_string(xi.dim()) + ", got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  }
}

}  // namespace

namespace detail {

Matrix tangent_projection_formula(const Matrix& xi, const Matrix& eta) {
  const Matrix co = Matrix::identity(xi.rows(), xi.field()) - xi;
  return co * eta * xi + xi * eta * co;
}

Matrix connection_formula(const Matrix& xi, const Matrix& eta, const Matrix& alpha) {
  const Matrix s = Matrix::identity(xi.rows(), xi.field()) - 2.0 * xi;
  return s * eta * alpha + alpha * eta * s;
}

void require_tangent(const GrassmannPoint& xi, const Matrix& eta, const char* what) {
  require_square_match(xi, eta, what);
  if (auto why = tangent_violation(xi, eta, default_tolerances().validation)) {
    throw DomainError(std::string(what) + ": not tangent: " + *why);
  }
}

}  // namespace detail

double projection_defect(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("projection_defect: matrix is not square");
  return std::max(hermitian_defect(m) / scale_of(m), frobenius_norm(m * m - m));
}

bool is_projection(const Matrix& m, double tol) {
  if (!m.is_square()) throw ShapeError("is_projection: matrix is not square");
  return hermitian_defect(m) <= tol && frobenius_norm(m * m - m) <= tol;
}

GrassmannPoint GrassmannPoint::from_matrix(Matrix proj) {
  return from_matrix(std::move(proj), default_tolerances().validation);
}

GrassmannPoint GrassmannPoint::from_matrix(Matrix proj, double tol) {
  if (!proj.is_square()) throw ShapeError("GrassmannPoint: matrix is not square");
  if (hermitian_defect(proj) > tol * scale_of(proj)) {
    throw DomainError("GrassmannPoint: matrix is not self-adjoint");
  }
  if (frobenius_norm(proj * proj - proj) > tol) {
    throw DomainError("GrassmannPoint: matrix is not idempotent");
  }
  const auto eig = eig_hermitian(proj);
  std::size_t rank = 0;
  for (double lambda : eig.eigenvalues) {
    if (std::min(std::abs(lambda), std::abs(lambda - 1.0)) > tol) {
      throw DomainError("GrassmannPoint: eigenvalue " + format_double(lambda) +
                        " is not in {0, 1}");
    }
    if (lambda >= 0.5) ++rank;
  }
  return GrassmannPoint(std::move(proj), rank);
}

Matrix GrassmannPoint::reflection() const {
  return 2.0 * proj_ - Matrix::identity(dim(), field());
}

GrassmannPoint renormalize(const Matrix& m) {
  const auto eig = eig_hermitian(m);
  const Matrix snapped =
      hermitian_function(eig, [](double x) { return x >= 0.5 ? 1.0 : 0.0; }, m.field());
  return GrassmannPoint::from_matrix(snapped);
}

TangentVector TangentVector::make(GrassmannPoint base, Matrix mat) {
  detail::require_tangent(base, mat, "TangentVector");
  return TangentVector(std::move(base), std::move(mat));
}

std::optional<std::string> tangent_violation(const GrassmannPoint& xi, const Matrix& eta,
                                             double tol) {
  require_square_match(xi, eta, "tangent_violation");
  if (eta.field() != xi.field()) return "scalar field differs from the base point";
  const double bound = tol * scale_of(eta);
  if (hermitian_defect(eta) > bound) return "not self-adjoint";
  const Matrix& p = xi.proj();
  if (frobenius_norm(eta * p + p * eta - eta) > bound) {
    return "eta*xi + xi*eta != eta (eta must swap xi(E) and its orthogonal complement)";
  }
  return std::nullopt;
}

bool is_tangent(const GrassmannPoint& xi, const Matrix& eta, double tol) {
  return !tangent_violation(xi, eta, tol).has_value();
}

bool is_normal(const GrassmannPoint& xi, const Matrix& eta, double tol) {
  require_square_match(xi, eta, "is_normal");
  if (eta.field() != xi.field()) return false;
  const double bound = tol * scale_of(eta);
  return hermitian_defect(eta) <= bound && frobenius_norm(commutator(eta, xi.proj())) <= bound;
}

TangentConditions tangent_conditions(const GrassmannPoint& xi, const Matrix& eta, double tol) {
  require_square_match(xi, eta, "tangent_conditions");
  const double bound = tol * scale_of(eta);
  const Matrix& p = xi.proj();
  const Matrix id = Matrix::identity(xi.dim(), xi.field());
  const Matrix co = id - p;
  const Matrix refl = xi.reflection();
  const auto frame = frame_from_point(xi);
  const Matrix& u = frame.frame();
  const Matrix& v = frame.complement();

  TangentConditions out;
  out.a = frobenius_norm(eta - detail::tangent_projection_formula(p, eta)) <= bound;
  out.b = frobenius_norm(adjoint(u) * eta * u) <= bound &&
          frobenius_norm(adjoint(v) * eta * v) <= bound;
  out.c = frobenius_norm(eta * p + p * eta - eta) <= bound;
  out.d = frobenius_norm(eta * p - co * eta) <= bound;
  out.e = frobenius_norm(eta * co - p * eta) <= bound;
  out.f = frobenius_norm(eta * refl + refl * eta) <= bound;
  return out;
}

TangentNormalSplit split_tangent_normal(const GrassmannPoint& xi, const Matrix& eta) {
  require_square_match(xi, eta, "split_tangent_normal");
  if (eta.field() != xi.field()) throw ShapeError("split_tangent_normal: field mismatch");
  const bool symmetrize = hermitian_defect(eta) > 0.0;
  const Matrix sym = symmetrize ? hermitian_part(eta) : eta;
  Matrix tangent = detail::tangent_projection_formula(xi.proj(), sym);
  Matrix normal = sym - tangent;
  return {TangentVector::make(xi, std::move(tangent)), std::move(normal), symmetrize};
}

TangentVector tangent_project(const GrassmannPoint& xi, const Matrix& eta) {
  return split_tangent_normal(xi, eta).tangent;
}

Matrix normal_project(const GrassmannPoint& xi, const Matrix& eta) {
  return split_tangent_normal(xi, eta).normal;
}

std::size_t dimension_at(const GrassmannPoint& xi) {
  const std::size_t n = xi.rank();
  const std::size_t d = n * (xi.dim() - n);
  return xi.field() == Field::complex ? 2 * d : d;
}

std::vector<TangentVector> tangent_basis(const GrassmannPoint& xi) {
  const auto frame = frame_from_point(xi);
  const Matrix& u = frame.frame();
  const Matrix& v = frame.complement();
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  std::vector<TangentVector> basis;
  basis.reserve(dimension_at(xi));
  for (std::size_t j = 0; j < v.cols(); ++j) {
    const Matrix vj = column_block(v, j, 1);
    for (std::size_t k = 0; k < u.cols(); ++k) {
      const Matrix uk = column_block(u, k, 1);
      const Matrix vu = vj * adjoint(uk);
      basis.push_back(TangentVector::make(xi, inv_sqrt2 * (vu + adjoint(vu))));
      if (xi.field() == Field::complex) {
        const Matrix ivu = Scalar(0.0, 1.0) * vu;
        basis.push_back(TangentVector::make(xi, inv_sqrt2 * (ivu + adjoint(ivu))));
      }
    }
  }
  return basis;
}

std::size_t tangent_projection_rank(const GrassmannPoint& xi, double tol) {
  const std::size_t n = xi.dim();
  const Field field = xi.field();
  std::vector<Matrix> spanning;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Matrix e(n, n, field);
      e(i, j) = 1.0;
      e(j, i) = 1.0;
      spanning.push_back(e);
      if (field == Field::complex && i != j) {
        Matrix f(n, n, field);
        f(i, j) = Scalar(0.0, 1.0);
        f(j, i) = Scalar(0.0, -1.0);
        spanning.push_back(f);
      }
    }
  }
  // Gram-Schmidt rank of the projected spanning set under the real HS product.
  std::vector<Matrix> kept;
  for (const Matrix& s : spanning) {
    Matrix r = detail::tangent_projection_formula(xi.proj(), s);
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& q : kept) r -= hs_inner(q, r) * q;
    const double norm = frobenius_norm(r);
    if (norm > tol) kept.push_back((1.0 / norm) * r);
  }
  return kept.size();
}

Matrix connection(const GrassmannPoint& xi, const Matrix& eta, const Matrix& alpha) {
  detail::require_tangent(xi, eta, "connection");
  detail::require_tangent(xi, alpha, "connection");
  return detail::connection_formula(xi.proj(), eta, alpha);
}

TangentVector curvature(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                        const Matrix& eta) {
  detail::require_tangent(xi, alpha, "curvature");
  detail::require_tangent(xi, beta, "curvature");
  detail::require_tangent(xi, eta, "curvature");
  // Grouping through the commutator keeps R(a,b) = -R(b,a) exact in floating point.
  const Matrix comm = alpha * beta - beta * alpha;
  return TangentVector::make(xi, eta * comm - comm * eta);
}

double sectional_riem(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta) {
  detail::require_tangent(xi, alpha, "sectional");
  detail::require_tangent(xi, beta, "sectional");
  const Matrix ab = alpha * beta;
  return 2.0 * hs_inner(ab, ab) - 2.0 * hs_inner(ab, beta * alpha);
}

SectionalCurvature sectional(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta) {
  const double riem = sectional_riem(xi, alpha, beta);
  const double ab = hs_inner(alpha, beta);
  const double gram = hs_inner(alpha, alpha) * hs_inner(beta, beta) - ab * ab;
  if (gram <= 1e-12) {
    throw DomainError("sectional: degenerate plane (Gram determinant " + format_double(gram) +
                      ")");
  }
  return {riem, riem / gram};
}

double ricci(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta) {
  if (xi.field() != Field::real) {
    throw DomainError("ricci: the closed form is only available over the real field");
  }
  detail::require_tangent(xi, alpha, "ricci");
  detail::require_tangent(xi, beta, "ricci");
  // + 0.0 turns a signed zero (N = 2) into +0.
  return 0.5 * (static_cast<double>(xi.dim()) - 2.0) * hs_inner(alpha, beta) + 0.0;
}

double ricci_trace_oracle(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta) {
  double sum = 0.0;
  for (const auto& e : tangent_basis(xi)) {
    sum += hs_inner(curvature(xi, alpha, e.mat(), beta).mat(), e.mat());
  }
  return sum + 0.0;
}

Geodesic::Geodesic(const GrassmannPoint& xi, const Matrix& eta)
    : start_(xi), eta_(eta), reflection_(xi.reflection()) {
  detail::require_tangent(xi, eta, "geodesic");
  trivial_ = frobenius_norm(eta) == 0.0;
  if (!trivial_) eig_ = eig_hermitian(eta);
}

Matrix Geodesic::point_matrix(double t) const {
  if (trivial_ || t == 0.0) return start_.proj();
  const std::size_t n = start_.dim();
  const auto trig = matrix_trig(eig_, 2.0 * t, start_.field());
  return 0.5 * (Matrix::identity(n, start_.field()) + reflection_ * trig.cos_part + trig.sin_part);
}

Matrix Geodesic::velocity_matrix(double t) const {
  if (trivial_ || t == 0.0) return eta_;
  const auto trig = matrix_trig(eig_, 2.0 * t, start_.field());
  return (trig.cos_part - reflection_ * trig.sin_part) * eta_;
}

Matrix Geodesic::displacement(double t) const {
  const std::size_t n = start_.dim();
  if (trivial_ || t == 0.0) return Matrix::zeros(n, n, start_.field());
  const Matrix half_sin = hermitian_function(
      eig_, [t](double x) { return 0.5 * std::sin(2.0 * t * x); }, start_.field());
  const Matrix sin_sq = hermitian_function(
      eig_, [t](double x) { return std::sin(t * x) * std::sin(t * x); }, start_.field());
  return half_sin - reflection_ * sin_sq;
}

GrassmannPoint Geodesic::point(double t) const {
  if (trivial_ || t == 0.0) return start_;
  return GrassmannPoint::from_matrix(point_matrix(t));
}

TangentVector Geodesic::velocity(double t) const {
  return TangentVector::make(point(t), velocity_matrix(t));
}

GrassmannPoint geodesic(const GrassmannPoint& xi, const Matrix& eta, double t) {
  return Geodesic(xi, eta).point(t);
}

TangentVector geodesic_velocity(const GrassmannPoint& xi, const Matrix& eta, double t) {
  return Geodesic(xi, eta).velocity(t);
}

GrassmannPoint symmetry(const GrassmannPoint& pi, const GrassmannPoint& xi) {
  if (pi.dim() != xi.dim() || pi.field() != xi.field()) {
    throw ShapeError("symmetry: points live in different spaces");
  }
  const Matrix s = Matrix::identity(pi.dim(), pi.field()) - 2.0 * pi.proj();
  return GrassmannPoint::from_matrix(s * xi.proj() * s);
}

namespace {

void require_fibre(const GrassmannPoint& xi, const Matrix& w, const char* what) {
  if (w.rows() != xi.dim() || w.cols() != 1) {
    throw ShapeError(std::string(what) + ": fibre vector must be " + std::to_string(xi.dim()) +
                     "x1");
  }
  if (frobenius_norm(xi.proj() * w - w) > default_tolerances().validation * scale_of(w)) {
    throw DomainError(std::string(what) + ": vector is not in the fibre xi(E)");
  }
}

}  // namespace

Matrix tauto_connection(const GrassmannPoint& xi, const Matrix& w, const Matrix& eta) {
  require_fibre(xi, w, "tauto_connection");
  detail::require_tangent(xi, eta, "tauto_connection");
  return eta * w;
}

Matrix tauto_curvature(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                       const Matrix& w) {
  require_fibre(xi, w, "tauto_curvature");
  detail::require_tangent(xi, alpha, "tauto_curvature");
  detail::require_tangent(xi, beta, "tauto_curvature");
  return beta * (alpha * w) - alpha * (beta * w);
}

TangentVector parallel_transport(const GrassmannPoint& xi, const Matrix& eta, const Matrix& w0,
                                 double t, int steps) {
  if (steps < 1) throw DomainError("parallel_transport: steps must be >= 1");
  detail::require_tangent(xi, w0, "parallel_transport");
  const Geodesic path(xi, eta);
  if (t == 0.0) return TangentVector::make(xi, w0);

  const double h = t / steps;
  const auto rhs = [&](double s, const Matrix& w) {
    return detail::connection_formula(path.point_matrix(s), w, path.velocity_matrix(s));
  };
  Matrix w = w0;
  GrassmannPoint base = xi;
  for (int k = 0; k < steps; ++k) {
    const double s = k * h;
    const Matrix k1 = rhs(s, w);
    const Matrix k2 = rhs(s + 0.5 * h, w + (0.5 * h) * k1);
    const Matrix k3 = rhs(s + 0.5 * h, w + (0.5 * h) * k2);
    const Matrix k4 = rhs(s + h, w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    base = renormalize(path.point_matrix(s + h));
    w = detail::tangent_projection_formula(base.proj(), hermitian_part(w));
  }
  return TangentVector::make(base, std::move(w));
}

GrassmannPoint random_point(Rng& rng, std::size_t n_ambient, std::size_t rank, Field field) {
  if (rank == 0) return GrassmannPoint::from_matrix(Matrix::zeros(n_ambient, n_ambient, field));
  const Matrix u = random_orthonormal_frame(rng, n_ambient, rank, field);
  return GrassmannPoint::from_matrix(u * adjoint(u));
}

Matrix random_tangent(Rng& rng, const GrassmannPoint& xi) {
  const Matrix h = random_hermitian(rng, xi.dim(), xi.field());
  if (xi.rank() == 0 || xi.rank() == xi.dim()) return Matrix::zeros(xi.dim(), xi.dim(), xi.field());
  return detail::tangent_projection_formula(xi.proj(), h);
}

}  // namespace grassgeo
