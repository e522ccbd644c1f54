#pragma once

// Finite-difference and ODE oracles. Every oracle here evaluates a
// definition (a derivative of a projection-valued map, the general curvature
// identity of a connection, the geodesic equation) instead of a closed-form
// result, and none of them call the closed forms they are used to check.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "grassgeo/grassmann.hpp"
#include "grassgeo/typed_io.hpp"

namespace grassgeo::oracles {

struct FdConfig {
  double h1 = 1e-5;  // central first differences
  double h2 = 1e-4;  // central second differences
  double tol = 1e-6;

  /// Throws DomainError unless 0 < h1 < 1 and h2 > 0.
  void validate() const;
};

using MatrixMap = std::function<Matrix(const Matrix&)>;
using MatrixCurve = std::function<Matrix(double)>;

/// (map(x + h v) - map(x - h v)) / 2h with h = cfg.h1.
Matrix directional_derivative(const MatrixMap& map, const Matrix& x, const Matrix& v,
                              const FdConfig& cfg = {});
Matrix curve_derivative(const MatrixCurve& curve, double s, const FdConfig& cfg = {});
/// (c(s + h) - 2 c(s) + c(s - h)) / h^2 with h = cfg.h2.
Matrix curve_second_derivative(const MatrixCurve& curve, double s, const FdConfig& cfg = {});

/// s -> exp(s W) xi exp(-s W) with W = [eta, xi]. For tangent eta this is a
/// curve of projections through xi with velocity eta, computed through the
/// eigendecomposition of i W rather than the closed-form geodesic.
class ConjugationCurve {
 public:
  ConjugationCurve(const Matrix& xi, const Matrix& eta);
  Matrix operator()(double s) const;

 private:
  Matrix xi_;
  EigenDecomposition generator_;
};

/// Connection of the manifold as the derivative of the tangent projection:
/// d/ds P_{xi + s alpha}(eta) at s = 0.
Matrix connection_oracle(const GrassmannPoint& xi, const Matrix& eta, const Matrix& alpha,
                         const FdConfig& cfg = {});

/// Metric connection of the tautological bundle: derivative, along a curve
/// in the manifold with velocity eta, of the orthogonal projection onto the
/// moving fibre, applied to w.
Matrix metric_connection_oracle(const GrassmannPoint& xi, const Matrix& w, const Matrix& eta,
                                const FdConfig& cfg = {});

/// A connection extended smoothly to every base point x in the ambient
/// space: (x, w, v) -> theta_x(w, v), w a fibre element and v a direction.
using ExtendedConnection = std::function<Matrix(const Matrix& x, const Matrix& w, const Matrix& v)>;

/// R(u, v, w) = D theta(u)(w, v) - D theta(v)(w, u)
///            + theta(theta(w, u), v) - theta(theta(w, v), u),
/// with base-point derivatives taken by central differences.
Matrix curvature_oracle(const ExtendedConnection& theta, const Matrix& x, const Matrix& u,
                        const Matrix& v, const Matrix& w, const FdConfig& cfg = {});

/// (x, w, v) -> (Id - 2x) w v + v w (Id - 2x).
ExtendedConnection grassmann_connection_extension();
/// (x, w, v) -> v w.
ExtendedConnection tautological_connection_extension();

/// Orthogonal group connection as d/ds of the tangent projection
/// lambda -> (lambda - x lambda* x)/2 at x = xi + s beta, applied to alpha.
Matrix o_connection_oracle(const Matrix& xi, const Matrix& alpha, const Matrix& beta,
                           const FdConfig& cfg = {});

/// Derivative of x -> x pi x* at xi along alpha.
Matrix submersion_differential_oracle(const Matrix& pi, const Matrix& xi, const Matrix& alpha,
                                      const FdConfig& cfg = {});

/// Derivative of chart_forward along a conjugation curve with velocity eta.
Matrix chart_differential_oracle(const SubspaceFrame& f, const GrassmannPoint& xi,
                                 const Matrix& eta, const FdConfig& cfg = {});

/// Integrates f'' = theta_f(f', f') by RK4 from (xi, eta), with theta
/// obtained by differentiating the tangent projection numerically. The
/// point is renormalized and the velocity re-projected after every step.
GrassmannPoint geodesic_ode_oracle(const GrassmannPoint& xi, const Matrix& eta, double t,
                                   int steps, const FdConfig& cfg = {});

// Frozen oracle fixtures. Each fixture is a labeled matrix sequence holding
// the inputs of one randomized check followed by the oracle output, stored
// as `<check>_<N>_<n>_<seed>.txt`.

const std::vector<std::string>& fixture_checks();
std::string fixture_name(const std::string& check, std::size_t n_ambient, std::size_t rank,
                         std::uint64_t seed);
std::vector<LabeledMatrix> make_fixture(const std::string& check, std::size_t n_ambient,
                                        std::size_t rank, std::uint64_t seed);

}  // namespace grassgeo::oracles
