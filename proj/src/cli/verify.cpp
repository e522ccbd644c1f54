#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

#include "grassgeo/cli.hpp"
#include "grassgeo/complexgrass.hpp"
#include "grassgeo/grassmann.hpp"
#include "grassgeo/oracles.hpp"
#include "grassgeo/orthogroup.hpp"

namespace grassgeo::cli {

namespace {

using oracles::FdConfig;

struct Context {
  std::size_t n_ambient;
  std::size_t rank;
  Field field;
};

using TrialFn = std::function<double(Rng&, const Context&)>;

struct CheckSpec {
  std::string name;
  double tolerance;
  TrialFn trial;
};

double rel(const Matrix& got, const Matrix& want) {
  return frobenius_norm(got - want) / std::max(1.0, frobenius_norm(want));
}

// Scales m to unit Frobenius norm. Norms below 1e-12 are rounding residue
// of a trivial subspace and give the zero matrix.
Matrix unit(Matrix m) {
  const double norm = frobenius_norm(m);
  if (norm < 1e-12) return Matrix::zeros(m.rows(), m.cols(), m.field());
  return (1.0 / norm) * m;
}

GrassmannPoint point(Rng& rng, const Context& c) {
  return random_point(rng, c.n_ambient, c.rank, c.field);
}

Matrix unit_tangent(Rng& rng, const GrassmannPoint& xi) { return unit(random_tangent(rng, xi)); }

// Entries k/8 with integer k in [-8, 8] (both parts for the complex field).
Matrix dyadic_matrix(Rng& rng, std::size_t n, Field field) {
  const auto draw = [&rng] { return (std::floor(rng.uniform() * 17.0) - 8.0) / 8.0; };
  Matrix m(n, n, field);
  for (Scalar& z : m.data()) z = field == Field::complex ? Scalar(draw(), draw()) : Scalar(draw());
  return m;
}

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

// Two tangent vectors at xi that commute: either built on disjoint pairs of
// frame/complement directions, or proportional when no such pairs exist.
std::pair<Matrix, Matrix> commuting_pair(Rng& rng, const GrassmannPoint& xi) {
  const SubspaceFrame frame = frame_from_point(xi);
  const Matrix& u = frame.frame();
  const Matrix& v = frame.complement();
  if (u.cols() >= 2 && v.cols() >= 2) {
    const auto block = [&](std::size_t k) {
      const Matrix vu = rng.gaussian() * (column_block(v, k, 1) * adjoint(column_block(u, k, 1)));
      return vu + adjoint(vu);
    };
    return {block(0), block(1)};
  }
  const Matrix a = unit_tangent(rng, xi);
  return {a, rng.gaussian() * a};
}

std::vector<CheckSpec> grassmann_checks(const Context& ctx) {
  const FdConfig cfg;
  std::vector<CheckSpec> checks = {
      {"grassmann.point_spectrum", 1e-9,
       [](Rng& rng, const Context& c) {
         const auto eig = eig_hermitian(point(rng, c).proj());
         double worst = 0.0;
         for (double l : eig.eigenvalues) worst = std::max(worst, std::min(std::abs(l), std::abs(l - 1.0)));
         return worst;
       }},
      {"grassmann.tangent_characterization", 0.0,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix h = random_hermitian(rng, c.n_ambient, c.field);
         const Matrix eta = rng.uniform() < 0.5 ? random_tangent(rng, xi) : h;
         return tangent_conditions(xi, eta, 1e-9).agree() ? 0.0 : 1.0;
       }},
      {"grassmann.tangent_project_idempotent", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix p = tangent_project(xi, random_hermitian(rng, c.n_ambient, c.field)).mat();
         return rel(tangent_project(xi, p).mat(), p);
       }},
      {"grassmann.tangent_normal_orthogonal", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit(random_hermitian(rng, c.n_ambient, c.field));
         const auto split = split_tangent_normal(xi, eta);
         return std::max(std::abs(hs_inner(split.tangent.mat(), split.normal)),
                         frobenius_norm(split.tangent.mat() + split.normal - eta));
       }},
      {"grassmann.connection_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         const Matrix alpha = unit_tangent(rng, xi);
         return rel(connection(xi, eta, alpha), oracles::connection_oracle(xi, eta, alpha, cfg));
       }},
      {"grassmann.connection_normal", 1e-10,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix theta = connection(xi, unit_tangent(rng, xi), unit_tangent(rng, xi));
         return std::max(frobenius_norm(commutator(theta, xi.proj())), hermitian_defect(theta));
       }},
      {"grassmann.connection_symmetric", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         return frobenius_norm(connection(xi, a, b) - connection(xi, b, a));
       }},
      {"grassmann.curvature_oracle", 1e-5,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         const Matrix e = unit_tangent(rng, xi);
         return rel(curvature(xi, a, b, e).mat(),
                    oracles::curvature_oracle(oracles::grassmann_connection_extension(), xi.proj(),
                                              a, b, e, cfg));
       }},
      {"grassmann.curvature_antisymmetric", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         const Matrix e = unit_tangent(rng, xi);
         return frobenius_norm(curvature(xi, a, b, e).mat() + curvature(xi, b, a, e).mat());
       }},
      {"grassmann.curvature_bianchi", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         const Matrix e = unit_tangent(rng, xi);
         return frobenius_norm(curvature(xi, a, b, e).mat() + curvature(xi, b, e, a).mat() +
                               curvature(xi, e, a, b).mat());
       }},
      {"grassmann.tauto_curvature_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         const Matrix w = xi.proj() * random_gaussian(rng, c.n_ambient, 1, c.field);
         return rel(tauto_curvature(xi, a, b, w),
                    oracles::curvature_oracle(oracles::tautological_connection_extension(),
                                              xi.proj(), a, b, w, cfg));
       }},
      {"grassmann.metric_connection_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix w = xi.proj() * random_gaussian(rng, c.n_ambient, 1, c.field);
         const Matrix eta = unit_tangent(rng, xi);
         return rel(tauto_connection(xi, w, eta), oracles::metric_connection_oracle(xi, w, eta, cfg));
       }},
      {"grassmann.sectional_nonnegative", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         return std::max(0.0, -sectional_riem(xi, unit_tangent(rng, xi), unit_tangent(rng, xi)));
       }},
      {"grassmann.sectional_commuting_zero", 1e-10,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const auto [a, b] = commuting_pair(rng, xi);
         return std::abs(sectional_riem(xi, a, b));
       }},
      {"grassmann.geodesic_in_manifold", 1e-9,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Geodesic f(xi, unit_tangent(rng, xi));
         return projection_defect(f.point_matrix(uniform(rng, 0.0, 2.0 * std::numbers::pi)));
       }},
      {"grassmann.geodesic_equation", 1e-5,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Geodesic f(xi, unit_tangent(rng, xi));
         const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
         const Matrix accel = oracles::curve_second_derivative(
             [&](double s) { return f.point_matrix(s); }, t, cfg);
         const Matrix v = f.velocity_matrix(t);
         return frobenius_norm(accel - connection(f.point(t), v, v));
       }},
      {"grassmann.geodesic_ode_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         const double t = uniform(rng, 0.0, std::numbers::pi);
         return frobenius_norm(geodesic(xi, eta, t).proj() -
                               oracles::geodesic_ode_oracle(xi, eta, t, 400, cfg).proj());
       }},
      {"grassmann.symmetry_reverses_geodesic", 1e-9,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Geodesic f(xi, unit_tangent(rng, xi));
         const double t = uniform(rng, 0.0, 2.0 * std::numbers::pi);
         return frobenius_norm(symmetry(xi, f.point(t)).proj() - f.point_matrix(-t));
       }},
      {"grassmann.symmetry_isometry", 1e-9,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint pi = point(rng, c);
         const GrassmannPoint x = point(rng, c);
         const GrassmannPoint y = point(rng, c);
         const double before = frobenius_norm(x.proj() - y.proj());
         const double after = frobenius_norm(symmetry(pi, x).proj() - symmetry(pi, y).proj());
         return std::abs(after - before);
       }},
      {"grassmann.transport_preserves_norm", 1e-6,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         const Matrix w0 = unit_tangent(rng, xi);
         const double t = uniform(rng, 0.0, std::numbers::pi);
         return std::abs(frobenius_norm(parallel_transport(xi, eta, w0, t, 200).mat()) -
                         frobenius_norm(w0));
       }},
      {"grassmann.transport_of_velocity", 1e-6,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         const double t = uniform(rng, 0.0, std::numbers::pi);
         return frobenius_norm(parallel_transport(xi, eta, eta, t, 200).mat() -
                               geodesic_velocity(xi, eta, t).mat());
       }},
      {"grassmann.chart_roundtrip", 1e-9,
       [](Rng& rng, const Context& c) {
         const SubspaceFrame f = frame_from_point(point(rng, c));
         const Matrix coord = 0.5 * random_gaussian(rng, c.n_ambient - c.rank, c.rank, c.field);
         const ChartCoord there{f, coord};
         const GrassmannPoint xi = chart_inverse(there);
         return std::max(frobenius_norm(chart_forward(f, xi).coord - coord),
                         frobenius_norm(chart_inverse(chart_forward(f, xi)).proj() - xi.proj()));
       }},
      {"grassmann.chart_differential_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const SubspaceFrame f = frame_from_point(point(rng, c));
         const Matrix coord = 0.5 * random_gaussian(rng, c.n_ambient - c.rank, c.rank, c.field);
         const GrassmannPoint xi = chart_inverse({f, coord});
         const Matrix eta = unit_tangent(rng, xi);
         return rel(chart_differential(f, xi, eta),
                    oracles::chart_differential_oracle(f, xi, eta, cfg));
       }},
      {"grassmann.dimension_count", 0.0,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const double d = static_cast<double>(dimension_at(xi));
         return std::max(std::abs(static_cast<double>(tangent_projection_rank(xi)) - d),
                         std::abs(static_cast<double>(tangent_basis(xi).size()) - d));
       }},
  };
  if (ctx.field == Field::real) {
    checks.push_back({"grassmann.ricci_trace", 1e-8, [](Rng& rng, const Context& c) {
                        const GrassmannPoint xi = point(rng, c);
                        const Matrix a = unit_tangent(rng, xi);
                        const Matrix b = unit_tangent(rng, xi);
                        return std::abs(ricci(xi, a, b) - ricci_trace_oracle(xi, a, b));
                      }});
  }
  return checks;
}

std::vector<CheckSpec> oracle_checks() {
  const FdConfig cfg;
  return {
      {"oracles.quadratic_calibration", 1e-11,
       [](Rng& rng, const Context& c) {
         // Dyadic entries and a power-of-two step keep every operation
         // exact, so any error left is truncation error of the scheme.
         const FdConfig exact{std::ldexp(1.0, -17), 1e-4, 1e-6};
         const Matrix x = dyadic_matrix(rng, c.n_ambient, c.field);
         const Matrix v = dyadic_matrix(rng, c.n_ambient, c.field);
         const Matrix fd = oracles::directional_derivative(
             [](const Matrix& m) { return m * m; }, x, v, exact);
         return frobenius_norm(fd - (x * v + v * x));
       }},
      {"oracles.conjugation_curve_velocity", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         const oracles::ConjugationCurve curve(xi.proj(), eta);
         return std::max(frobenius_norm(curve(0.0) - xi.proj()),
                         rel(oracles::curve_derivative(curve, 0.0, cfg), eta));
       }},
      {"oracles.conjugation_curve_in_manifold", 1e-9,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const oracles::ConjugationCurve curve(xi.proj(), unit_tangent(rng, xi));
         return projection_defect(curve(uniform(rng, -2.0, 2.0)));
       }},
  };
}

std::vector<CheckSpec> orthogroup_checks() {
  const FdConfig cfg;
  const auto setup = [](Rng& rng, const Context& c) {
    return SubmersionSetup{random_point(rng, c.n_ambient, c.rank, c.field)};
  };
  const auto vertical = [](Rng& rng, const SubmersionSetup& s, const OrthPoint& xi) {
    return unit(vertical_project(s, xi, random_o_tangent(rng, xi)));
  };
  return {
      {"orthogroup.project_idempotent", 1e-12,
       [](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix p = o_project(xi, random_gaussian(rng, c.n_ambient, c.n_ambient, c.field));
         return rel(o_project(xi, p), p);
       }},
      {"orthogroup.project_tangent", 1e-12,
       [](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix p = unit(o_project(xi, random_gaussian(rng, c.n_ambient, c.n_ambient, c.field)));
         return frobenius_norm(adjoint(p) * xi.mat() + adjoint(xi.mat()) * p);
       }},
      {"orthogroup.project_orthogonal", 1e-12,
       [](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix l = unit(random_gaussian(rng, c.n_ambient, c.n_ambient, c.field));
         const Matrix m = unit(random_gaussian(rng, c.n_ambient, c.n_ambient, c.field));
         return std::abs(hs_inner(l - o_project(xi, l), o_project(xi, m)));
       }},
      {"orthogroup.connection_oracle", 1e-6,
       [cfg](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix a = unit(random_o_tangent(rng, xi));
         const Matrix b = unit(random_o_tangent(rng, xi));
         return rel(o_connection(xi, a, b), oracles::o_connection_oracle(xi.mat(), a, b, cfg));
       }},
      {"orthogroup.connection_symmetric", 1e-12,
       [](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix a = unit(random_o_tangent(rng, xi));
         const Matrix b = unit(random_o_tangent(rng, xi));
         return frobenius_norm(o_connection(xi, a, b) - o_connection(xi, b, a));
       }},
      {"orthogroup.bi_invariance", 1e-12,
       [](Rng& rng, const Context& c) {
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix a = unit(random_o_tangent(rng, xi));
         const Matrix b = unit(random_o_tangent(rng, xi));
         return bi_invariance_defect(xi, a, b, random_orth_point(rng, c.n_ambient, c.field));
       }},
      {"orthogroup.submersion_in_manifold", 1e-9,
       [setup](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const GrassmannPoint image = submersion(s, xi);
         return std::max(projection_defect(image.proj()),
                         std::abs(static_cast<double>(image.rank()) - static_cast<double>(c.rank)));
       }},
      {"orthogroup.submersion_differential_oracle", 1e-6,
       [cfg, setup](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix a = unit(random_o_tangent(rng, xi));
         return rel(submersion_differential(s, xi, a).mat(),
                    oracles::submersion_differential_oracle(s.h_projection.proj(), xi.mat(), a, cfg));
       }},
      {"orthogroup.submersion_identity", 1e-10,
       [setup](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix beta = unit_tangent(rng, submersion(s, xi));
         const Matrix lifted = submersion_coadjoint(s, xi, beta);
         const double tangency = o_is_tangent(xi, lifted, 1e-12) ? 0.0 : 1.0;
         return std::max(tangency,
                         frobenius_norm(submersion_differential(s, xi, lifted).mat() - beta));
       }},
      {"orthogroup.horizontal_isometry", 1e-9,
       [setup](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const GrassmannPoint image = submersion(s, xi);
         const Matrix b1 = unit_tangent(rng, image);
         const Matrix b2 = unit_tangent(rng, image);
         return std::abs(hs_inner(submersion_coadjoint(s, xi, b1), submersion_coadjoint(s, xi, b2)) -
                         hs_inner(b1, b2));
       }},
      {"orthogroup.fibre_totally_geodesic", 1e-9,
       [setup, vertical](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix a = vertical(rng, s, xi);
         const Matrix b = vertical(rng, s, xi);
         return fibre_geodesic_defect(s, xi, a, b);
       }},
      {"orthogroup.horizontal_geodesic", 1e-6,
       [setup](Rng& rng, const Context& c) {
         const SubmersionSetup s = setup(rng, c);
         const OrthPoint xi = random_orth_point(rng, c.n_ambient, c.field);
         const Matrix beta = unit_tangent(rng, submersion(s, xi));
         return horizontal_geodesic_defect(s, xi, beta, 1.0, 5, 200);
       }},
  };
}

std::vector<CheckSpec> complex_checks() {
  const auto chart_setup = [](Rng& rng, const Context& c) {
    const SubspaceFrame f = frame_from_point(point(rng, c));
    const Matrix coord = 0.5 * random_gaussian(rng, c.n_ambient - c.rank, c.rank, c.field);
    return std::pair{f, chart_inverse({f, coord})};
  };
  return {
      {"complex.j_squared", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix eta = unit_tangent(rng, xi);
         return frobenius_norm(j_apply(xi, j_apply(xi, eta).mat()).mat() + eta);
       }},
      {"complex.j_isometry", 1e-12,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const Matrix a = unit_tangent(rng, xi);
         const Matrix b = unit_tangent(rng, xi);
         return std::abs(hs_inner(j_apply(xi, a).mat(), j_apply(xi, b).mat()) - hs_inner(a, b));
       }},
      {"complex.nabla_j", 1e-10,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         return nabla_j_defect(xi, unit_tangent(rng, xi), unit_tangent(rng, xi)) / 2.0;
       }},
      {"complex.nabla_j_transport_oracle", 1e-5,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         return frobenius_norm(
             nabla_j_transport_oracle(xi, unit_tangent(rng, xi), unit_tangent(rng, xi)));
       }},
      {"complex.holomorphic_chart", 1e-8,
       [chart_setup](Rng& rng, const Context& c) {
         const auto [f, xi] = chart_setup(rng, c);
         return holomorphic_chart_defect(f, xi, unit_tangent(rng, xi));
       }},
      {"complex.realified_connection", 1e-10,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         return totally_geodesic_defect_complex(xi, unit_tangent(rng, xi), unit_tangent(rng, xi))
             .connection;
       }},
      {"complex.realified_geodesic", 1e-9,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const auto d =
             totally_geodesic_defect_complex(xi, unit_tangent(rng, xi), unit_tangent(rng, xi));
         return std::max(d.geodesic_commutator, d.geodesic_agreement);
       }},
      {"complex.realification_consistency", 1e-12,
       [](Rng& rng, const Context& c) {
         const Matrix u = random_orthonormal_frame(rng, c.n_ambient, c.rank, c.field);
         const Matrix m = random_gaussian(rng, c.n_ambient, c.n_ambient, c.field);
         return std::max(realified_projection_defect(u), realified_adjoint_defect(m));
       }},
      {"complex.dimension_count", 0.0,
       [](Rng& rng, const Context& c) {
         const GrassmannPoint xi = point(rng, c);
         const double want = 2.0 * static_cast<double>(c.rank * (c.n_ambient - c.rank));
         return std::max(std::abs(static_cast<double>(dimension_at(xi)) - want),
                         std::abs(static_cast<double>(tangent_projection_rank(xi)) - want));
       }},
  };
}

CheckResult run_check(const CheckSpec& spec, const VerifyOptions& options, const Context& ctx) {
  CheckResult result{spec.name, options.trials, 0.0,
                     options.tolerance_override.value_or(spec.tolerance), true};
  for (int k = 0; k < options.trials; ++k) {
    Rng rng(options.seed + static_cast<std::uint64_t>(k));
    const double error = spec.trial(rng, ctx);
    if (std::isnan(error)) {
      result.max_error = error;
      break;
    }
    result.max_error = std::max(result.max_error, error);
  }
  result.passed = !std::isnan(result.max_error) && result.max_error <= result.tolerance;
  return result;
}

void report_complex_ricci(const VerifyOptions& options, const Context& ctx, std::ostream& info) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int k = 0; k < options.trials; ++k) {
    Rng rng(options.seed + static_cast<std::uint64_t>(k));
    const GrassmannPoint xi = point(rng, ctx);
    const Matrix a = unit_tangent(rng, xi);
    if (frobenius_norm(a) == 0.0) continue;
    const double ratio = ricci_trace_oracle(xi, a, a) / hs_inner(a, a);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  if (lo > hi) {
    info << "info complex.ricci_ratio: tangent space is trivial, nothing measured\n";
    return;
  }
  info << "info complex.ricci_ratio (trace oracle / <a,a>, not asserted): min "
       << format_double(lo) << " max " << format_double(hi) << " seed " << options.seed << '\n';
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites = {"all", "grassmann", "complex", "orthogroup",
                                                  "oracles"};
  return suites;
}

std::string version() {
#ifdef GRASSGEO_VERSION
  return GRASSGEO_VERSION;
#else
  return "unknown";
#endif
}

Report run_verify(const VerifyOptions& options, std::ostream& info) {
  const auto& suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), options.suite) == suites.end()) {
    throw std::invalid_argument("unknown suite '" + options.suite + "'");
  }
  if (options.suite == "complex" && options.field != Field::complex) {
    throw std::invalid_argument("the complex suite requires --field complex");
  }
  if (options.n_ambient < 1) throw std::invalid_argument("--dim must be at least 1");
  if (options.rank > options.n_ambient) throw std::invalid_argument("--rank must not exceed --dim");
  if (options.trials < 1) throw std::invalid_argument("--trials must be at least 1");

  const Context ctx{options.n_ambient, options.rank, options.field};
  const bool all = options.suite == "all";
  std::vector<CheckSpec> specs;
  const auto add = [&specs](std::vector<CheckSpec> more) {
    for (auto& s : more) specs.push_back(std::move(s));
  };
  if (all || options.suite == "oracles") add(oracle_checks());
  if (all || options.suite == "grassmann") add(grassmann_checks(ctx));
  if (all || options.suite == "orthogroup") add(orthogroup_checks());
  if (options.field == Field::complex && (all || options.suite == "complex")) add(complex_checks());
  if (all && options.field == Field::real) {
    info << "info complex suite skipped (run with --field complex)\n";
  }

  Report report;
  report.metadata = {options.seed, options.n_ambient, options.rank, options.field, version()};
  for (const auto& spec : specs) report.checks.push_back(run_check(spec, options, ctx));
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });

  if (options.field == Field::complex &&
      (all || options.suite == "grassmann" || options.suite == "complex")) {
    report_complex_ricci(options, ctx, info);
  }
  return report;
}

std::string report_to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {
      {"seed", report.metadata.seed},
      {"N", report.metadata.n_ambient},
      {"n", report.metadata.rank},
      {"field", to_string(report.metadata.field)},
      {"version", report.metadata.version},
  };
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    doc["checks"].push_back({
        {"name", c.name},
        {"trials", c.trials},
        {"max_error", c.max_error},
        {"tolerance", c.tolerance},
        {"passed", c.passed},
    });
  }
  return doc.dump(2) + "\n";
}

void print_report(std::ostream& out, const Report& report) {
  char buffer[64];
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " trials=" << c.trials;
    std::snprintf(buffer, sizeof buffer, " max_error=%.3e tol=%.1e", c.max_error, c.tolerance);
    out << buffer << " seed=" << report.metadata.seed << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  out << report.checks.size() - static_cast<std::size_t>(failed) << '/' << report.checks.size()
      << " checks passed (N=" << report.metadata.n_ambient << ", n=" << report.metadata.rank
      << ", field=" << to_string(report.metadata.field) << ", seed=" << report.metadata.seed
      << ")\n";
}

}  // namespace grassgeo::cli
