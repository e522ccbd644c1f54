#include "grassgeo/complexgrass.hpp"

namespace grassgeo {

namespace {

const Scalar kI(0.0, 1.0);

void require_complex(const GrassmannPoint& xi, const char* what) {
  if (xi.field() != Field::complex) {
    throw DomainError(std::string(what) + ": requires a complex-field point");
  }
}

Matrix realified_transpose(const Matrix& m) {
  const Matrix r = realify(m);
  Matrix t(r.cols(), r.rows(), Field::real);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) t(j, i) = r(i, j);
  return t;
}

}  // namespace

TangentVector j_apply(const GrassmannPoint& xi, const Matrix& eta) {
  require_complex(xi, "j_apply");
  detail::require_tangent(xi, eta, "j_apply");
  return TangentVector::make(xi, kI * (eta * xi.reflection()));
}

ComplexStructureEval evaluate_complex_structure(const GrassmannPoint& xi, const Matrix& eta) {
  return {xi, eta, j_apply(xi, eta)};
}

double nabla_j_defect(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta) {
  require_complex(xi, "nabla_j_defect");
  detail::require_tangent(xi, alpha, "nabla_j_defect");
  detail::require_tangent(xi, beta, "nabla_j_defect");
  const Matrix r = xi.reflection();
  const Matrix j_beta = kI * (beta * r);
  const Matrix value = 2.0 * (kI * (beta * alpha)) +
                       kI * (detail::connection_formula(xi.proj(), beta, alpha) * r) -
                       detail::connection_formula(xi.proj(), j_beta, alpha);
  return frobenius_norm(value);
}

Matrix nabla_j_transport_oracle(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                                double h, int steps) {
  require_complex(xi, "nabla_j_transport_oracle");
  const Geodesic path(xi, alpha);
  const auto j_field = [&](double s) {
    const TangentVector moved = parallel_transport(xi, alpha, beta, s, steps);
    const Matrix base = path.point_matrix(s);
    const Matrix r = 2.0 * base - Matrix::identity(base.rows(), base.field());
    return kI * (moved.mat() * r);
  };
  const Matrix derivative = (0.5 / h) * (j_field(h) - j_field(-h));
  return detail::tangent_projection_formula(xi.proj(), derivative);
}

double holomorphic_chart_defect(const SubspaceFrame& f, const GrassmannPoint& xi, const Matrix& eta) {
  const Matrix j_eta = j_apply(xi, eta).mat();
  return frobenius_norm(chart_differential(f, xi, j_eta) - kI * chart_differential(f, xi, eta));
}

Matrix realify(const Matrix& m) {
  Matrix r(2 * m.rows(), 2 * m.cols(), Field::real);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar z = m(i, j);
      r(2 * i, 2 * j) = z.real();
      r(2 * i, 2 * j + 1) = -z.imag();
      r(2 * i + 1, 2 * j) = z.imag();
      r(2 * i + 1, 2 * j + 1) = z.real();
    }
  }
  return r;
}

Matrix realified_unit(std::size_t n) {
  return realify(kI * Matrix::identity(n, Field::complex));
}

TotallyGeodesicDefect totally_geodesic_defect_complex(const GrassmannPoint& xi, const Matrix& eta,
                                                      const Matrix& alpha, double t) {
  require_complex(xi, "totally_geodesic_defect_complex");
  detail::require_tangent(xi, eta, "totally_geodesic_defect_complex");
  detail::require_tangent(xi, alpha, "totally_geodesic_defect_complex");

  const GrassmannPoint xi_r = GrassmannPoint::from_matrix(realify(xi.proj()));
  const Matrix eta_r = realify(eta);
  const Matrix alpha_r = realify(alpha);

  TotallyGeodesicDefect out;
  out.connection =
      frobenius_norm(connection(xi_r, eta_r, alpha_r) - realify(connection(xi, eta, alpha)));

  const Matrix point_c = geodesic(xi, eta, t).proj();
  const Matrix point_r = realify(point_c);
  out.geodesic_commutator = frobenius_norm(commutator(point_r, realified_unit(xi.dim())));
  out.geodesic_agreement = frobenius_norm(geodesic(xi_r, eta_r, t).proj() - point_r);
  return out;
}

double realified_projection_defect(const Matrix& frame) {
  const Matrix r = realify(frame);
  return frobenius_norm(realify(frame * adjoint(frame)) - r * realified_transpose(frame));
}

double realified_adjoint_defect(const Matrix& m) {
  return frobenius_norm(realify(adjoint(m)) - realified_transpose(m));
}

}  // namespace grassgeo
