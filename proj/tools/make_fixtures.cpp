// Regenerates the frozen oracle fixtures:
//   make_fixtures <output-directory>
// Each check is written for the (N, n, seed) triples below.

#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "grassgeo/oracles.hpp"

namespace {

struct Shape {
  std::size_t n_ambient;
  std::size_t rank;
  std::uint64_t seed;
};

constexpr std::array<Shape, 3> kShapes = {{{3, 1, 1}, {4, 2, 2}, {5, 2, 3}}};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-directory>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  try {
    for (const auto& check : grassgeo::oracles::fixture_checks()) {
      for (const auto& s : kShapes) {
        const auto path = dir / grassgeo::oracles::fixture_name(check, s.n_ambient, s.rank, s.seed);
        std::ofstream out(path);
        grassgeo::write_labeled(out, grassgeo::oracles::make_fixture(check, s.n_ambient, s.rank, s.seed));
        std::cout << path.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
