#include "grassgeo/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"

#include "grassgeo/grassmann.hpp"
#include "grassgeo/optdemo.hpp"
#include "grassgeo/oracles.hpp"
#include "grassgeo/typed_io.hpp"

namespace grassgeo::cli {

namespace {

// Raised for malformed or inconsistent input data (exit code 3).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix load_matrix(const std::string& path, const char* role) {
  try {
    return read_typed_file(path).matrix;
  } catch (const Error& e) {
    throw InputError(std::string(role) + ": " + e.what());
  }
}

GrassmannPoint load_point(const std::string& path) {
  Matrix m = load_matrix(path, "--point");
  try {
    return GrassmannPoint::from_matrix(std::move(m));
  } catch (const Error& e) {
    throw InputError(std::string("--point ") + path + ": " + e.what());
  }
}

Matrix load_tangent(const GrassmannPoint& xi, const std::string& path, const char* role) {
  Matrix eta = load_matrix(path, role);
  if (eta.rows() != xi.dim() || eta.cols() != xi.dim()) {
    throw InputError(std::string(role) + " " + path + ": expected a " + std::to_string(xi.dim()) +
                     "x" + std::to_string(xi.dim()) + " matrix");
  }
  if (eta.field() != xi.field()) {
    throw InputError(std::string(role) + " " + path + ": field differs from the point's field");
  }
  if (auto why = tangent_violation(xi, eta, default_tolerances().validation)) {
    throw InputError(std::string(role) + " " + path + ": not a tangent vector at the point: " + *why);
  }
  return eta;
}

struct GeodesicArgs {
  std::string point;
  std::string tangent;
  double t = 0.0;
  bool oracle = false;
  int steps = 1000;
};

int cmd_geodesic(const GeodesicArgs& args, std::ostream& out) {
  const GrassmannPoint xi = load_point(args.point);
  const Matrix eta = load_tangent(xi, args.tangent, "--tangent");
  const GrassmannPoint f = geodesic(xi, eta, args.t);
  if (!args.oracle) {
    write_matrix(out, f.proj());
    return kExitOk;
  }
  const GrassmannPoint rk4 = oracles::geodesic_ode_oracle(xi, eta, args.t, args.steps);
  write_matrix(out, rk4.proj());
  out << "discrepancy " << format_double(frobenius_norm(rk4.proj() - f.proj())) << '\n';
  return kExitOk;
}

struct CurvatureArgs {
  std::string point;
  std::string a;
  std::string b;
  std::string eta;
  bool ricci = false;
  bool sectional = false;
};

int cmd_curvature(const CurvatureArgs& args, std::ostream& out, std::ostream& err) {
  const GrassmannPoint xi = load_point(args.point);
  const Matrix a = load_tangent(xi, args.a, "--a");
  const Matrix b = load_tangent(xi, args.b, "--b");
  if (args.sectional) {
    const double riem = sectional_riem(xi, a, b);
    try {
      const auto s = sectional(xi, a, b);
      out << format_double(s.riem) << ' ' << format_double(s.normalized) << '\n';
    } catch (const DomainError& e) {
      err << "warning: " << e.what() << '\n';
      out << format_double(riem) << " nan\n";
    }
    return kExitOk;
  }
  if (args.ricci) {
    const double oracle = ricci_trace_oracle(xi, a, b);
    if (xi.field() == Field::real) {
      out << format_double(ricci(xi, a, b)) << ' ' << format_double(oracle) << '\n';
    } else {
      err << "warning: the closed-form Ricci value is only available over the reals\n";
      out << "nan " << format_double(oracle) << '\n';
    }
    return kExitOk;
  }
  const Matrix eta = args.eta.empty() ? a : load_tangent(xi, args.eta, "--eta");
  write_matrix(out, curvature(xi, a, b, eta).mat());
  return kExitOk;
}

struct OptimizeArgs {
  std::string matrix;
  std::size_t rank = 1;
  std::uint64_t seed = 0;
  std::string csv;
  double step = 0.1;
  int max_iters = 500;
  double grad_tol = 1e-8;
};

int cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
  const Matrix a = load_matrix(args.matrix, "--matrix");
  if (!a.is_square()) throw InputError("--matrix: matrix is not square");
  if (hermitian_defect(a) > default_tolerances().validation * std::max(1.0, frobenius_norm(a))) {
    throw InputError("--matrix: matrix is not self-adjoint");
  }
  if (args.rank < 1 || args.rank > a.rows()) {
    throw InputError("--rank must lie between 1 and the matrix size");
  }
  const DescentConfig cfg{args.step, args.max_iters, args.grad_tol, args.seed};
  const DescentTrace trace = dominant_subspace(a, args.rank, cfg);
  const DescentStep& last = trace.iterates.back();
  out << "objective " << format_double(hs_inner(trace.final_point.proj(), a)) << " iterations "
      << last.iter << " grad_norm " << format_double(last.grad_norm) << " status "
      << to_string(trace.status) << " seed " << args.seed << '\n';
  if (!args.csv.empty()) {
    std::ofstream file(args.csv);
    if (!file) throw InputError("cannot write '" + args.csv + "'");
    write_trace_csv(file, trace);
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, const std::string& json_path, std::ostream& out) {
  const Report report = run_verify(options, out);
  print_report(out, report);
  if (!json_path.empty()) {
    std::ofstream file(json_path);
    if (!file) throw InputError("cannot write '" + json_path + "'");
    file << report_to_json(report);
  }
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extrinsic geometry of real and complex Grassmann manifolds"};
  app.name("grassgeo");
  app.require_subcommand(1);
  app.set_version_flag("--version", version());

  VerifyOptions verify;
  std::string field_text = "real";
  std::string json_path;
  double tol_override = 0.0;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites");
  verify_cmd->add_option("--dim", verify.n_ambient, "Ambient dimension N")->capture_default_str();
  verify_cmd->add_option("--rank", verify.rank, "Subspace dimension n")->capture_default_str();
  verify_cmd->add_option("--field", field_text, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}))
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Base seed; trial k uses seed + k")
      ->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials, "Trials per check")->capture_default_str();
  verify_cmd->add_option("--suite", verify.suite, "all, grassmann, complex, orthogroup or oracles")
      ->check(CLI::IsMember(verify_suites()))
      ->capture_default_str();
  verify_cmd->add_option("--json", json_path, "Write the JSON report to this path");
  auto* tol_opt =
      verify_cmd->add_option("--tol", tol_override, "Replace every check's tolerance")
          ->check(CLI::NonNegativeNumber);

  GeodesicArgs geo;
  auto* geo_cmd = app.add_subcommand("geodesic", "Evaluate the closed-form geodesic");
  geo_cmd->add_option("--point", geo.point, "Point file")->required();
  geo_cmd->add_option("--tangent", geo.tangent, "Tangent file")->required();
  geo_cmd->add_option("--t", geo.t, "Curve parameter")->required();
  geo_cmd->add_flag("--oracle", geo.oracle, "Print the RK4 integration and its discrepancy");
  geo_cmd->add_option("--steps", geo.steps, "RK4 steps for --oracle")->capture_default_str();

  CurvatureArgs curv;
  auto* curv_cmd = app.add_subcommand("curvature", "Curvature tensor, sectional or Ricci values");
  curv_cmd->add_option("--point", curv.point, "Point file")->required();
  curv_cmd->add_option("--a", curv.a, "First tangent file")->required();
  curv_cmd->add_option("--b", curv.b, "Second tangent file")->required();
  curv_cmd->add_option("--eta", curv.eta, "Third tangent file (defaults to --a)");
  auto* ricci_flag = curv_cmd->add_flag("--ricci", curv.ricci, "Print the Ricci value and the trace oracle");
  auto* sect_flag = curv_cmd->add_flag("--sectional", curv.sectional, "Print riem and normalized sectional curvature");
  ricci_flag->excludes(sect_flag);

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Dominant invariant subspace by gradient ascent");
  opt_cmd->add_option("--matrix", opt.matrix, "Self-adjoint matrix file")->required();
  opt_cmd->add_option("--rank", opt.rank, "Subspace dimension n")->required();
  opt_cmd->add_option("--seed", opt.seed, "Seed of the random starting point")->capture_default_str();
  opt_cmd->add_option("--csv", opt.csv, "Write the iteration trace to this CSV file");
  opt_cmd->add_option("--step", opt.step, "Maximum step length")->capture_default_str();
  opt_cmd->add_option("--max-iters", opt.max_iters, "Iteration budget")->capture_default_str();
  opt_cmd->add_option("--grad-tol", opt.grad_tol, "Gradient norm stopping threshold")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*verify_cmd) {
      verify.field = parse_field(field_text);
      if (tol_opt->count() > 0) verify.tolerance_override = tol_override;
      return cmd_verify(verify, json_path, out);
    }
    if (*geo_cmd) return cmd_geodesic(geo, out);
    if (*curv_cmd) return cmd_curvature(curv, out, err);
    if (*opt_cmd) return cmd_optimize(opt, out);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitUsage;
}

}  // namespace grassgeo::cli
