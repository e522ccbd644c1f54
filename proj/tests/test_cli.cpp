#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "grassgeo/cli.hpp"
#include "test_support.hpp"

using namespace grassgeo;
using grassgeo::testing::data_path;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "grassgeo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "grassgeo_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--field", "octonion"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--suite", "complex", "--field", "real"}).code == cli::kExitUsage);
  CHECK(run({"curvature", "--point", data_path("e1_point3.txt"), "--a", data_path("e12_tangent3.txt"),
             "--b", data_path("e13_tangent3.txt"), "--ricci", "--sectional"})
            .code == cli::kExitUsage);
}

TEST_CASE("help and version exit with 0") {
  CHECK(run({"--help"}).code == cli::kExitOk);
  const Run v = run({"--version"});
  CHECK(v.code == cli::kExitOk);
  CHECK(v.out.find(cli::version()) != std::string::npos);
}

TEST_CASE("geodesic at t = 0 echoes the point") {
  const Run r = run({"geodesic", "--point", data_path("line2_point.txt"), "--tangent",
                     data_path("line2_tangent.txt"), "--t", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "2 2 real\n1 0\n0 0\n");
}

TEST_CASE("geodesic quarter turn of the line") {
  const Run r = run({"geodesic", "--point", data_path("line2_point.txt"), "--tangent",
                     data_path("line2_tangent.txt"), "--t", format_double(std::numbers::pi / 4)});
  REQUIRE(r.code == 0);
  const Matrix m = matrix_from_text(r.out);
  CHECK(frobenius_norm(m - Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})) <= 1e-15);
}

TEST_CASE("geodesic with the RK4 oracle reports a small discrepancy") {
  const Run r = run({"geodesic", "--point", data_path("line2_point.txt"), "--tangent",
                     data_path("line2_tangent.txt"), "--t", "0.9", "--oracle"});
  REQUIRE(r.code == 0);
  const auto pos = r.out.find("discrepancy ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 12)) <= 1e-6);
}

TEST_CASE("invalid inputs exit with 3") {
  const Run bad_tangent = run({"geodesic", "--point", data_path("line2_point.txt"), "--tangent",
                               data_path("normal_not_tangent2.txt"), "--t", "1"});
  CHECK(bad_tangent.code == cli::kExitBadInput);
  CHECK(bad_tangent.err.find("eta*xi + xi*eta != eta") != std::string::npos);

  CHECK(run({"geodesic", "--point", data_path("malformed.txt"), "--tangent",
             data_path("line2_tangent.txt"), "--t", "1"})
            .code == cli::kExitBadInput);
  CHECK(run({"geodesic", "--point", data_path("does_not_exist.txt"), "--tangent",
             data_path("line2_tangent.txt"), "--t", "1"})
            .code == cli::kExitBadInput);
  CHECK(run({"optimize", "--matrix", data_path("not_self_adjoint.txt"), "--rank", "1"}).code ==
        cli::kExitBadInput);
  CHECK(run({"optimize", "--matrix", data_path("diag321.txt"), "--rank", "4"}).code ==
        cli::kExitBadInput);
}

TEST_CASE("curvature subcommand outputs") {
  const std::string p = data_path("e1_point3.txt");
  const std::string a = data_path("e12_tangent3.txt");
  const std::string b = data_path("e13_tangent3.txt");

  const Run sec = run({"curvature", "--point", p, "--a", a, "--b", b, "--sectional"});
  CHECK(sec.code == 0);
  CHECK(sec.out == "2 0.5\n");

  const Run r = run({"curvature", "--point", p, "--a", a, "--b", b, "--eta", a});
  CHECK(r.code == 0);
  CHECK(matrix_from_text(r.out) == matrix_from_text("3 3 real\n0 0 1\n0 0 0\n1 0 0\n"));

  const Run same = run({"curvature", "--point", p, "--a", a, "--b", a});
  CHECK(frobenius_norm(matrix_from_text(same.out)) == 0.0);

  const Run ricci3 = run({"curvature", "--point", p, "--a", a, "--b", a, "--ricci"});
  CHECK(ricci3.out.rfind("1 ", 0) == 0);

  const std::string lp = data_path("line2_point.txt");
  const std::string lt = data_path("line2_tangent.txt");
  const Run ricci2 = run({"curvature", "--point", lp, "--a", lt, "--b", lt, "--ricci"});
  CHECK(ricci2.code == 0);
  CHECK(ricci2.out == "0 0\n");

  const Run degenerate = run({"curvature", "--point", lp, "--a", lt, "--b", lt, "--sectional"});
  CHECK(degenerate.code == 0);
  CHECK(degenerate.out == "0 nan\n");
  CHECK(degenerate.err.find("warning") != std::string::npos);
}

TEST_CASE("optimize examples") {
  const Run d = run({"optimize", "--matrix", data_path("diag321.txt"), "--rank", "1"});
  REQUIRE(d.code == 0);
  std::istringstream line(d.out);
  std::string key;
  double objective = 0.0;
  line >> key >> objective;
  CHECK(key == "objective");
  CHECK(std::abs(objective - 3.0) <= 1e-8);
  CHECK(d.out.find("status converged") != std::string::npos);

  const Run id = run({"optimize", "--matrix", data_path("identity4.txt"), "--rank", "2"});
  CHECK(id.out.rfind("objective 2 iterations 0 ", 0) == 0);
}

TEST_CASE("optimize CSV is reproducible for a seed") {
  const auto first = scratch("trace_a.csv");
  const auto second = scratch("trace_b.csv");
  const auto other = scratch("trace_c.csv");
  for (const auto& [path, seed] : {std::pair{first, "5"}, std::pair{second, "5"}, std::pair{other, "6"}}) {
    REQUIRE(run({"optimize", "--matrix", data_path("diag321.txt"), "--rank", "1", "--seed", seed,
                 "--csv", path.string()})
                .code == 0);
  }
  const std::string a = slurp(first);
  CHECK(a.rfind("iter,objective,grad_norm\n", 0) == 0);
  CHECK(a == slurp(second));
  CHECK(a != slurp(other));
}

TEST_CASE("verify writes a stable JSON report") {
  const auto path = scratch("report.json");
  const Run r = run({"verify", "--dim", "4", "--rank", "2", "--trials", "5", "--json", path.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(path));
  REQUIRE(j.is_object());
  CHECK(j.size() == 2);
  CHECK(j.contains("metadata"));
  CHECK(j.contains("checks"));
  const auto& meta = j["metadata"];
  CHECK(meta["seed"] == 0);
  CHECK(meta["N"] == 4);
  CHECK(meta["n"] == 2);
  CHECK(meta["field"] == "real");
  CHECK(meta["version"] == cli::version());
  REQUIRE(j["checks"].size() > 10);
  std::string previous;
  for (const auto& c : j["checks"]) {
    CHECK(c.size() == 5);
    for (const char* key : {"name", "trials", "max_error", "tolerance", "passed"}) CHECK(c.contains(key));
    CHECK(c["passed"] == (c["max_error"].get<double>() <= c["tolerance"].get<double>()));
    CHECK(c["trials"] == 5);
    const std::string name = c["name"];
    CHECK(name > previous);
    previous = name;
  }
}

TEST_CASE("verify prints one line per check with its seed") {
  const Run r = run({"verify", "--dim", "3", "--rank", "1", "--trials", "3", "--suite", "oracles",
                     "--seed", "12"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int pass_lines = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("PASS ", 0) == 0) {
      ++pass_lines;
      CHECK(line.find("seed=12") != std::string::npos);
    }
    CHECK(line.rfind("FAIL ", 0) != 0);
  }
  CHECK(pass_lines >= 3);
}

TEST_CASE("verify on degenerate ranks") {
  CHECK(run({"verify", "--dim", "4", "--rank", "0", "--trials", "3"}).code == 0);
  CHECK(run({"verify", "--dim", "4", "--rank", "4", "--trials", "3"}).code == 0);
}

TEST_CASE("verify complex suite") {
  const Run r = run({"verify", "--dim", "3", "--rank", "1", "--trials", "3", "--field", "complex",
                     "--suite", "complex"});
  CHECK(r.code == 0);
  CHECK(r.out.find("complex.") != std::string::npos);
}

TEST_CASE("an impossible tolerance makes verify exit with 1") {
  const Run r = run({"verify", "--dim", "4", "--rank", "2", "--trials", "2", "--suite", "grassmann",
                     "--tol", "1e-300"});
  CHECK(r.code == cli::kExitCheckFailed);
  CHECK(r.out.find("FAIL ") != std::string::npos);
  CHECK(run({"verify", "--tol", "-1"}).code == cli::kExitUsage);
}
