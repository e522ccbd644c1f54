// Closed forms evaluated on the frozen fixture inputs must reproduce the
// stored oracle outputs. The fixtures are regenerated only by make_fixtures.

#include <filesystem>
#include <map>

#include "grassgeo/orthogroup.hpp"
#include "grassgeo/typed_io.hpp"
#include "test_support.hpp"

using namespace grassgeo;

namespace {

struct Loaded {
  std::map<std::string, Matrix> m;
  const Matrix& at(const std::string& label) const {
    const auto it = m.find(label);
    REQUIRE_MESSAGE(it != m.end(), "missing label " << label);
    return it->second;
  }
};

Loaded load(const std::filesystem::path& path) {
  Loaded out;
  for (auto& [label, matrix] : read_labeled_file(path.string())) out.m.emplace(label, matrix);
  return out;
}

std::string check_of(const std::string& stem) {
  // <check>_<N>_<n>_<seed>: strip the three numeric fields.
  std::string s = stem;
  for (int i = 0; i < 3; ++i) s = s.substr(0, s.rfind('_'));
  return s;
}

// Closed form for one fixture together with the tolerance it is held to.
std::pair<Matrix, double> closed_form(const std::string& check, const Loaded& f) {
  const std::string base = check.rfind("complex_", 0) == 0 ? check.substr(8) : check;
  if (base == "connection") {
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {connection(xi, f.at("eta"), f.at("alpha")), 1e-6};
  }
  if (base == "curvature") {
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {curvature(xi, f.at("alpha"), f.at("beta"), f.at("eta")).mat(), 1e-5};
  }
  if (base == "tauto_curvature") {
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {tauto_curvature(xi, f.at("alpha"), f.at("beta"), f.at("w")), 1e-6};
  }
  if (base == "metric_connection") {
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {tauto_connection(xi, f.at("w"), f.at("eta")), 1e-6};
  }
  if (base == "geodesic_ode") {
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {geodesic(xi, f.at("eta"), f.at("t")(0, 0).real()).proj(), 1e-6};
  }
  if (base == "chart_differential") {
    const auto frame = SubspaceFrame::from_columns(f.at("frame"), f.at("complement"));
    const auto xi = GrassmannPoint::from_matrix(f.at("xi"));
    return {chart_differential(frame, xi, f.at("eta")), 1e-6};
  }
  if (base == "o_connection") {
    const auto xi = OrthPoint::from_matrix(f.at("xi"));
    return {o_connection(xi, f.at("alpha"), f.at("beta")), 1e-6};
  }
  if (base == "submersion_differential") {
    const SubmersionSetup setup{GrassmannPoint::from_matrix(f.at("pi"))};
    const auto xi = OrthPoint::from_matrix(f.at("xi"));
    return {submersion_differential(setup, xi, f.at("alpha")).mat(), 1e-6};
  }
  FAIL("unhandled fixture check " << check);
  return {};
}

}  // namespace

TEST_CASE("every fixture reproduces its oracle output") {
  const std::filesystem::path dir = GRASSGEO_FIXTURE_DIR;
  REQUIRE(std::filesystem::is_directory(dir));
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    const std::string stem = entry.path().stem().string();
    CAPTURE(stem);
    const Loaded f = load(entry.path());
    const Matrix& oracle = f.at("oracle");
    const auto [value, tol] = closed_form(check_of(stem), f);
    const double err = frobenius_norm(value - oracle) / std::max(1.0, frobenius_norm(oracle));
    CHECK(err <= tol);
    CHECK(value.field() == oracle.field());
    ++count;
  }
  CHECK(count == 33);
}
