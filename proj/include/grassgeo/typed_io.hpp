#pragma once

// Typed matrix files. A typed file is the plain matrix text format preceded
// by one header line:
//
//   #grassgeo point
//   #grassgeo tangent <base-point-file>
//   #grassgeo frame
//
// Files without a header are read as plain matrices. Labeled matrix
// sequences (used for fixtures) prefix each matrix with `# <label>`.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

enum class FileKind { matrix, point, tangent, frame };

struct TypedMatrix {
  FileKind kind = FileKind::matrix;
  std::string base_ref;  // base-point file named by a tangent header
  Matrix matrix;
};

void write_point(std::ostream& out, const GrassmannPoint& xi);
void write_tangent(std::ostream& out, const Matrix& eta, const std::string& base_ref);
void write_frame(std::ostream& out, const SubspaceFrame& frame);

TypedMatrix read_typed(std::istream& in);
TypedMatrix read_typed_file(const std::string& path);

using LabeledMatrix = std::pair<std::string, Matrix>;

void write_labeled(std::ostream& out, const std::vector<LabeledMatrix>& items);
std::vector<LabeledMatrix> read_labeled(std::istream& in);
std::vector<LabeledMatrix> read_labeled_file(const std::string& path);

}  // namespace grassgeo
