#include "grassgeo/oracles.hpp"

namespace grassgeo::oracles {

namespace {

Matrix drop_imaginary(Matrix m) {
  for (Scalar& z : m.data()) z = z.real();
  return m.with_field(Field::real);
}

// Local copies of the ambient formulas the oracles differentiate. They are
// written out here on purpose so that no oracle evaluates a closed form
// from the geometry modules.
Matrix tangent_projection_at(const Matrix& x, const Matrix& eta) {
  const Matrix co = Matrix::identity(x.rows(), x.field()) - x;
  return co * eta * x + x * eta * co;
}

Matrix o_projection_at(const Matrix& x, const Matrix& lambda) {
  return 0.5 * (lambda - x * adjoint(lambda) * x);
}

// Projection onto the span of the eigenvectors of x with eigenvalue >= 1/2.
Matrix spectral_projection(const Matrix& x) {
  const auto eig = eig_hermitian(x);
  Matrix p = Matrix::zeros(x.rows(), x.cols(), Field::complex);
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues[k] < 0.5) continue;
    const Matrix q = column_block(eig.eigenvectors, k, 1).with_field(Field::complex);
    p += q * adjoint(q);
  }
  return x.field() == Field::real ? drop_imaginary(std::move(p)) : p;
}

void require_same_square(const Matrix& a, const Matrix& b, const char* what) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(what) + ": operands must be square of the same size");
  }
}

}  // namespace

void FdConfig::validate() const {
  if (!(h1 > 0.0 && h1 < 1.0)) throw DomainError("FdConfig: h1 must lie in (0, 1)");
  if (!(h2 > 0.0)) throw DomainError("FdConfig: h2 must be positive");
}

Matrix directional_derivative(const MatrixMap& map, const Matrix& x, const Matrix& v,
                              const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h1;
  return (0.5 / h) * (map(x + h * v) - map(x - h * v));
}

Matrix curve_derivative(const MatrixCurve& curve, double s, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h1;
  return (0.5 / h) * (curve(s + h) - curve(s - h));
}

Matrix curve_second_derivative(const MatrixCurve& curve, double s, const FdConfig& cfg) {
  cfg.validate();
  const double h = cfg.h2;
  return (1.0 / (h * h)) * (curve(s + h) - 2.0 * curve(s) + curve(s - h));
}

ConjugationCurve::ConjugationCurve(const Matrix& xi, const Matrix& eta) : xi_(xi) {
  require_same_square(xi, eta, "ConjugationCurve");
  // W = [eta, xi] is skew-adjoint, so i W is self-adjoint and
  // exp(s W) = exp(-i s (i W)) = cos(s iW) - i sin(s iW).
  const Matrix w = commutator(eta, xi);
  generator_ = eig_hermitian(Scalar(0.0, 1.0) * w.with_field(Field::complex));
}

Matrix ConjugationCurve::operator()(double s) const {
  const auto [c, sn] = matrix_trig(generator_, s, Field::complex);
  const Matrix u = c - Scalar(0.0, 1.0) * sn;
  Matrix x = u * xi_.with_field(Field::complex) * adjoint(u);
  if (xi_.field() == Field::real) return drop_imaginary(std::move(x));
  return x;
}

Matrix connection_oracle(const GrassmannPoint& xi, const Matrix& eta, const Matrix& alpha,
                         const FdConfig& cfg) {
  require_same_square(xi.proj(), eta, "connection_oracle");
  require_same_square(xi.proj(), alpha, "connection_oracle");
  return directional_derivative(
      [&](const Matrix& x) { return tangent_projection_at(x, eta); }, xi.proj(), alpha, cfg);
}

Matrix metric_connection_oracle(const GrassmannPoint& xi, const Matrix& w, const Matrix& eta,
                                const FdConfig& cfg) {
  if (w.rows() != xi.dim()) throw ShapeError("metric_connection_oracle: w has the wrong length");
  const ConjugationCurve curve(xi.proj(), eta);
  return curve_derivative([&](double s) { return spectral_projection(curve(s)) * w; }, 0.0, cfg);
}

Matrix curvature_oracle(const ExtendedConnection& theta, const Matrix& x, const Matrix& u,
                        const Matrix& v, const Matrix& w, const FdConfig& cfg) {
  const Matrix d_u = directional_derivative(
      [&](const Matrix& y) { return theta(y, w, v); }, x, u, cfg);
  const Matrix d_v = directional_derivative(
      [&](const Matrix& y) { return theta(y, w, u); }, x, v, cfg);
  return d_u - d_v + theta(x, theta(x, w, u), v) - theta(x, theta(x, w, v), u);
}

ExtendedConnection grassmann_connection_extension() {
  return [](const Matrix& x, const Matrix& w, const Matrix& v) {
    const Matrix s = Matrix::identity(x.rows(), x.field()) - 2.0 * x;
    return s * w * v + v * w * s;
  };
}

ExtendedConnection tautological_connection_extension() {
  return [](const Matrix&, const Matrix& w, const Matrix& v) { return v * w; };
}

Matrix o_connection_oracle(const Matrix& xi, const Matrix& alpha, const Matrix& beta,
                           const FdConfig& cfg) {
  require_same_square(xi, alpha, "o_connection_oracle");
  require_same_square(xi, beta, "o_connection_oracle");
  return directional_derivative([&](const Matrix& x) { return o_projection_at(x, alpha); }, xi,
                                beta, cfg);
}

Matrix submersion_differential_oracle(const Matrix& pi, const Matrix& xi, const Matrix& alpha,
                                      const FdConfig& cfg) {
  require_same_square(xi, pi, "submersion_differential_oracle");
  require_same_square(xi, alpha, "submersion_differential_oracle");
  return directional_derivative([&](const Matrix& x) { return x * pi * adjoint(x); }, xi, alpha,
                                cfg);
}

Matrix chart_differential_oracle(const SubspaceFrame& f, const GrassmannPoint& xi,
                                 const Matrix& eta, const FdConfig& cfg) {
  const ConjugationCurve curve(xi.proj(), eta);
  return curve_derivative(
      [&](double s) { return chart_forward(f, GrassmannPoint::from_matrix(curve(s))).coord; },
      0.0, cfg);
}

GrassmannPoint geodesic_ode_oracle(const GrassmannPoint& xi, const Matrix& eta, double t,
                                   int steps, const FdConfig& cfg) {
  if (steps < 1) throw DomainError("geodesic_ode_oracle: steps must be >= 1");
  require_same_square(xi.proj(), eta, "geodesic_ode_oracle");
  cfg.validate();
  if (t == 0.0 || frobenius_norm(eta) == 0.0) return xi;

  // theta_f(v, v) as the derivative of the tangent projection at f along v.
  const auto accel = [&](const Matrix& f, const Matrix& v) {
    return directional_derivative([&](const Matrix& x) { return tangent_projection_at(x, v); },
                                  f, v, cfg);
  };
  const double h = t / steps;
  Matrix f = xi.proj();
  Matrix v = eta;
  for (int k = 0; k < steps; ++k) {
    const Matrix kf1 = v;
    const Matrix kv1 = accel(f, v);
    const Matrix f2 = f + (0.5 * h) * kf1;
    const Matrix v2 = v + (0.5 * h) * kv1;
    const Matrix kf2 = v2;
    const Matrix kv2 = accel(f2, v2);
    const Matrix f3 = f + (0.5 * h) * kf2;
    const Matrix v3 = v + (0.5 * h) * kv2;
    const Matrix kf3 = v3;
    const Matrix kv3 = accel(f3, v3);
    const Matrix f4 = f + h * kf3;
    const Matrix v4 = v + h * kv3;
    const Matrix kf4 = v4;
    const Matrix kv4 = accel(f4, v4);
    f += (h / 6.0) * (kf1 + 2.0 * kf2 + 2.0 * kf3 + kf4);
    v += (h / 6.0) * (kv1 + 2.0 * kv2 + 2.0 * kv3 + kv4);
    f = renormalize(f).proj();
    v = tangent_projection_at(f, hermitian_part(v));
  }
  return renormalize(f);
}

// ---------------------------------------------------------------------------
// Fixtures

namespace {

constexpr std::string_view kComplexPrefix = "complex_";

Matrix scalar_matrix(double value) { return Matrix::from_rows({{value}}); }

Matrix random_orthogonal(Rng& rng, std::size_t n, Field field) {
  return random_orthonormal_frame(rng, n, n, field);
}

Matrix random_o_tangent(Rng& rng, const Matrix& xi) {
  return o_projection_at(xi, random_gaussian(rng, xi.rows(), xi.cols(), xi.field()));
}

}  // namespace

const std::vector<std::string>& fixture_checks() {
  static const std::vector<std::string> checks = {
      "chart_differential", "complex_connection", "complex_curvature",
      "complex_o_connection", "connection", "curvature",
      "geodesic_ode", "metric_connection", "o_connection",
      "submersion_differential", "tauto_curvature",
  };
  return checks;
}

std::string fixture_name(const std::string& check, std::size_t n_ambient, std::size_t rank,
                         std::uint64_t seed) {
  return check + "_" + std::to_string(n_ambient) + "_" + std::to_string(rank) + "_" +
         std::to_string(seed) + ".txt";
}

std::vector<LabeledMatrix> make_fixture(const std::string& check_name, std::size_t n_ambient,
                                        std::size_t rank, std::uint64_t seed) {
  std::string check = check_name;
  Field field = Field::real;
  if (check.starts_with(kComplexPrefix)) {
    field = Field::complex;
    check = check.substr(kComplexPrefix.size());
  }
  Rng rng(seed);
  const FdConfig cfg;
  std::vector<LabeledMatrix> out;

  if (check == "connection" || check == "curvature" || check == "tauto_curvature" ||
      check == "metric_connection" || check == "geodesic_ode") {
    const GrassmannPoint xi = random_point(rng, n_ambient, rank, field);
    out.emplace_back("xi", xi.proj());
    if (check == "connection") {
      const Matrix eta = random_tangent(rng, xi);
      const Matrix alpha = random_tangent(rng, xi);
      out.emplace_back("eta", eta);
      out.emplace_back("alpha", alpha);
      out.emplace_back("oracle", connection_oracle(xi, eta, alpha, cfg));
    } else if (check == "curvature") {
      const Matrix alpha = random_tangent(rng, xi);
      const Matrix beta = random_tangent(rng, xi);
      const Matrix eta = random_tangent(rng, xi);
      out.emplace_back("alpha", alpha);
      out.emplace_back("beta", beta);
      out.emplace_back("eta", eta);
      out.emplace_back("oracle", curvature_oracle(grassmann_connection_extension(), xi.proj(),
                                                  alpha, beta, eta, cfg));
    } else if (check == "tauto_curvature") {
      const Matrix alpha = random_tangent(rng, xi);
      const Matrix beta = random_tangent(rng, xi);
      const Matrix w = xi.proj() * random_gaussian(rng, n_ambient, 1, field);
      out.emplace_back("alpha", alpha);
      out.emplace_back("beta", beta);
      out.emplace_back("w", w);
      out.emplace_back("oracle", curvature_oracle(tautological_connection_extension(), xi.proj(),
                                                  alpha, beta, w, cfg));
    } else if (check == "metric_connection") {
      const Matrix w = xi.proj() * random_gaussian(rng, n_ambient, 1, field);
      const Matrix eta = random_tangent(rng, xi);
      out.emplace_back("w", w);
      out.emplace_back("eta", eta);
      out.emplace_back("oracle", metric_connection_oracle(xi, w, eta, cfg));
    } else {
      const Matrix eta = random_tangent(rng, xi);
      const double t = 1.0;
      out.emplace_back("eta", eta);
      out.emplace_back("t", scalar_matrix(t));
      out.emplace_back("oracle", geodesic_ode_oracle(xi, eta, t, 1000, cfg).proj());
    }
  } else if (check == "chart_differential") {
    const GrassmannPoint base = random_point(rng, n_ambient, rank, field);
    const SubspaceFrame f = frame_from_point(base);
    const Matrix coord = 0.5 * random_gaussian(rng, n_ambient - rank, rank, field);
    const GrassmannPoint xi = chart_inverse({f, coord});
    const Matrix eta = random_tangent(rng, xi);
    out.emplace_back("frame", f.frame());
    out.emplace_back("complement", f.complement());
    out.emplace_back("xi", xi.proj());
    out.emplace_back("eta", eta);
    out.emplace_back("oracle", chart_differential_oracle(f, xi, eta, cfg));
  } else if (check == "o_connection") {
    const Matrix xi = random_orthogonal(rng, n_ambient, field);
    const Matrix alpha = random_o_tangent(rng, xi);
    const Matrix beta = random_o_tangent(rng, xi);
    out.emplace_back("xi", xi);
    out.emplace_back("alpha", alpha);
    out.emplace_back("beta", beta);
    out.emplace_back("oracle", o_connection_oracle(xi, alpha, beta, cfg));
  } else if (check == "submersion_differential") {
    const GrassmannPoint pi = random_point(rng, n_ambient, rank, field);
    const Matrix xi = random_orthogonal(rng, n_ambient, field);
    const Matrix alpha = random_o_tangent(rng, xi);
    out.emplace_back("pi", pi.proj());
    out.emplace_back("xi", xi);
    out.emplace_back("alpha", alpha);
    out.emplace_back("oracle", submersion_differential_oracle(pi.proj(), xi, alpha, cfg));
  } else {
    throw DomainError("make_fixture: unknown check '" + check_name + "'");
  }
  return out;
}

}  // namespace grassgeo::oracles
