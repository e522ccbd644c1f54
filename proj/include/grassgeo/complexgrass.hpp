#pragma once

// Complex Grassmannian specifics: the complex structure J on tangent
// spaces, the quantities that make up the Kaehler check, and realification
// of complex matrices into real ones of twice the size.

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

struct ComplexStructureEval {
  GrassmannPoint base;
  Matrix input;
  TangentVector output;
};

/// J(eta) = i eta (2 xi - Id). Throws DomainError for real-field points.
TangentVector j_apply(const GrassmannPoint& xi, const Matrix& eta);
ComplexStructureEval evaluate_complex_structure(const GrassmannPoint& xi, const Matrix& eta);

/// Frobenius norm of 2i beta alpha + i theta(beta, alpha)(2xi - Id) - theta(J beta, alpha).
double nabla_j_defect(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta);

/// Covariant derivative of J along alpha applied to beta, measured
/// numerically: beta is parallel transported along the geodesic with
/// velocity alpha, J is applied at the moved base points, and the tangent
/// part of the central difference is returned.
Matrix nabla_j_transport_oracle(const GrassmannPoint& xi, const Matrix& alpha, const Matrix& beta,
                                double h = 1e-5, int steps = 4);

/// ||d psi_F(J eta) - i d psi_F(eta)||_F.
double holomorphic_chart_defect(const SubspaceFrame& f, const GrassmannPoint& xi, const Matrix& eta);

/// Entry z = a + bi becomes the block [[a, -b], [b, a]]; row/column k of
/// the input maps to rows/columns 2k and 2k+1.
Matrix realify(const Matrix& m);
/// realify(i Id).
Matrix realified_unit(std::size_t n);

struct TotallyGeodesicDefect {
  /// ||theta computed in the realified real Grassmannian - realify(theta computed over C)||_F
  double connection = 0.0;
  /// ||[realify(f(t)), realify(i Id)]||_F for the complex geodesic f from (xi, eta)
  double geodesic_commutator = 0.0;
  /// ||real geodesic of the realified data - realify(complex geodesic)||_F
  double geodesic_agreement = 0.0;
};

TotallyGeodesicDefect totally_geodesic_defect_complex(const GrassmannPoint& xi, const Matrix& eta,
                                                      const Matrix& alpha, double t = 0.3);

/// ||realify(U U*) - realify(U) realify(U)^T||_F for a complex frame U.
double realified_projection_defect(const Matrix& frame);
/// ||realify(m*) - realify(m)^T||_F.
double realified_adjoint_defect(const Matrix& m);

}  // namespace grassgeo
