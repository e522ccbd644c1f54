#include <algorithm>
#include <cmath>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

namespace {

void require_orthonormal(const Matrix& m, const char* what) {
  const Matrix gram = adjoint(m) * m;
  const double defect = frobenius_norm(gram - Matrix::identity(m.cols(), m.field()));
  if (defect > default_tolerances().validation * std::max<double>(1.0, m.cols())) {
    throw DomainError(std::string(what) + ": columns are not orthonormal (defect " +
                      format_double(defect) + ")");
  }
}

// U spanning xi(E) and M = F* U; the restriction of pi_F to xi(E) is
// invertible iff M is.
struct ChartData {
  Matrix span;
  Matrix overlap;
};

ChartData chart_data(const SubspaceFrame& f, const GrassmannPoint& xi) {
  if (f.dim() != xi.dim() || f.field() != xi.field()) {
    throw ShapeError("chart: frame and point live in different spaces");
  }
  if (f.rank() != xi.rank()) {
    throw ShapeError("chart: frame rank " + std::to_string(f.rank()) + " != point rank " +
                     std::to_string(xi.rank()));
  }
  Matrix u = frame_from_point(xi).frame();
  Matrix overlap = adjoint(f.frame()) * u;
  return {std::move(u), std::move(overlap)};
}

void require_domain(const SubspaceFrame& f, const GrassmannPoint& xi, const char* what) {
  if (!chart_domain_contains(f, xi)) {
    throw DomainError(std::string(what) +
                      ": point is outside the chart domain (xi(E) meets the complement of F)");
  }
}

}  // namespace

SubspaceFrame SubspaceFrame::from_columns(Matrix frame) {
  require_orthonormal(frame, "SubspaceFrame");
  const std::size_t big_n = frame.rows();
  const std::size_t n = frame.cols();
  const Matrix co = Matrix::identity(big_n, frame.field()) - frame * adjoint(frame);
  const auto eig = eig_hermitian(co);
  Matrix complement = orthonormalize_columns(column_block(eig.eigenvectors, n, big_n - n));
  if (frame.cols() > 0 && big_n > n) {
    // Remove the residual overlap with F left by the eigensolver.
    complement = orthonormalize_columns(
        complement - frame * (adjoint(frame) * complement));
  }
  return SubspaceFrame(std::move(frame), std::move(complement));
}

SubspaceFrame SubspaceFrame::from_columns(Matrix frame, Matrix complement) {
  if (frame.rows() != complement.rows() || frame.cols() + complement.cols() != frame.rows()) {
    throw ShapeError("SubspaceFrame: frame and complement do not split the space");
  }
  require_orthonormal(hconcat(frame, complement), "SubspaceFrame");
  return SubspaceFrame(std::move(frame), std::move(complement));
}

GrassmannPoint point_from_frame(const SubspaceFrame& frame) {
  const Matrix& u = frame.frame();
  return GrassmannPoint::from_matrix(u * adjoint(u));
}

SubspaceFrame frame_from_point(const GrassmannPoint& xi) {
  const auto eig = eig_hermitian(xi.proj());
  const std::size_t big_n = xi.dim();
  std::size_t lower = 0;
  for (double lambda : eig.eigenvalues) {
    if (std::min(std::abs(lambda), std::abs(lambda - 1.0)) > 0.1) {
      throw DomainError("frame_from_point: eigenvalue " + format_double(lambda) +
                        " is farther than 0.1 from {0, 1}");
    }
    if (lambda < 0.5) ++lower;
  }
  const std::size_t n = big_n - lower;
  // Frame columns first, then the complement, re-orthonormalized together.
  const Matrix ordered = hconcat(column_block(eig.eigenvectors, lower, n),
                                 column_block(eig.eigenvectors, 0, lower));
  const Matrix q = big_n == 0 ? ordered : orthonormalize_columns(ordered);
  return SubspaceFrame(column_block(q, 0, n), column_block(q, n, lower));
}

bool chart_domain_contains(const SubspaceFrame& f, const GrassmannPoint& xi, double tol) {
  const auto data = chart_data(f, xi);
  if (f.rank() == 0) return true;
  return min_singular_value(data.overlap) > tol;
}

ChartCoord chart_forward(const SubspaceFrame& f, const GrassmannPoint& xi) {
  require_domain(f, xi, "chart_forward");
  const auto data = chart_data(f, xi);
  if (f.rank() == 0) return {f, Matrix::zeros(f.dim(), 0, f.field())};
  Matrix coord = adjoint(f.complement()) * data.span * inverse(data.overlap);
  return {f, std::move(coord)};
}

GrassmannPoint chart_inverse(const ChartCoord& c) {
  const SubspaceFrame& f = c.chart_base;
  if (c.coord.rows() != f.complement().cols() || c.coord.cols() != f.rank()) {
    throw ShapeError("chart_inverse: coordinate shape does not match the chart");
  }
  if (f.rank() == 0) return GrassmannPoint::from_matrix(Matrix::zeros(f.dim(), f.dim(), f.field()));
  // Graph of the map F -> F-perp.
  const Matrix graph = orthonormalize_columns(f.frame() + f.complement() * c.coord);
  return GrassmannPoint::from_matrix(graph * adjoint(graph));
}

Matrix chart_differential(const SubspaceFrame& f, const GrassmannPoint& xi, const Matrix& eta) {
  detail::require_tangent(xi, eta, "chart_differential");
  require_domain(f, xi, "chart_differential");
  const auto data = chart_data(f, xi);
  if (f.rank() == 0) return Matrix::zeros(f.dim(), 0, f.field());
  // phi = (pi_F restricted to xi(E))^{-1}, written as an N x n matrix acting
  // on F-coordinates. The derivative eta phi - phi pi_F eta phi already lies
  // in F-perp; read off its complement coordinates.
  const Matrix phi = data.span * inverse(data.overlap);
  const Matrix eta_phi = eta * phi;
  const Matrix d = eta_phi - phi * (adjoint(f.frame()) * eta_phi);
  return adjoint(f.complement()) * d;
}

}  // namespace grassgeo
