#include "grassgeo/typed_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace grassgeo {

namespace {

constexpr const char* kMagic = "#grassgeo";

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

void write_point(std::ostream& out, const GrassmannPoint& xi) {
  out << kMagic << " point\n";
  write_matrix(out, xi.proj());
}

void write_tangent(std::ostream& out, const Matrix& eta, const std::string& base_ref) {
  out << kMagic << " tangent";
  if (!base_ref.empty()) out << ' ' << base_ref;
  out << '\n';
  write_matrix(out, eta);
}

void write_frame(std::ostream& out, const SubspaceFrame& frame) {
  out << kMagic << " frame\n";
  write_matrix(out, frame.frame());
}

TypedMatrix read_typed(std::istream& in) {
  TypedMatrix out;
  const int first = in.peek();
  if (first == '#') {
    std::string line;
    std::getline(in, line);
    std::istringstream header(line);
    std::string magic;
    std::string kind;
    header >> magic >> kind;
    if (magic != kMagic) throw ParseError("unrecognized header '" + line + "'");
    if (kind == "point") {
      out.kind = FileKind::point;
    } else if (kind == "tangent") {
      out.kind = FileKind::tangent;
      header >> out.base_ref;
    } else if (kind == "frame") {
      out.kind = FileKind::frame;
    } else if (kind == "matrix") {
      out.kind = FileKind::matrix;
    } else {
      throw ParseError("unknown file kind '" + kind + "'");
    }
  }
  out.matrix = read_matrix(in);
  return out;
}

TypedMatrix read_typed_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_typed(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_labeled(std::ostream& out, const std::vector<LabeledMatrix>& items) {
  for (const auto& [label, m] : items) {
    out << "# " << label << '\n';
    write_matrix(out, m);
  }
}

std::vector<LabeledMatrix> read_labeled(std::istream& in) {
  std::vector<LabeledMatrix> items;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("# ", 0) != 0) throw ParseError("expected `# <label>`, got '" + line + "'");
    std::string label = line.substr(2);
    items.emplace_back(std::move(label), read_matrix(in));
  }
  return items;
}

std::vector<LabeledMatrix> read_labeled_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_labeled(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace grassgeo
