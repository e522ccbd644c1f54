#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "grassgeo/numkernel.hpp"

namespace grassgeo {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_double(const std::string& tok) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError("invalid number '" + tok + "'");
  return value;
}

std::size_t parse_size(const std::string& tok) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid dimension '" + tok + "'");
  }
  return value;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << ' ' << to_string(m.field()) << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j).real());
      if (m.is_complex()) out << ' ' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

std::string to_text(const Matrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

Matrix read_matrix(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw ParseError("matrix: missing `rows cols field` header");
  } while (is_blank(line));

  const auto header = split_tokens(line);
  if (header.size() != 3) throw ParseError("matrix: header must be `rows cols field`, got '" + line + "'");
  const std::size_t rows = parse_size(header[0]);
  const std::size_t cols = parse_size(header[1]);
  const Field field = parse_field(header[2]);
  const std::size_t per_row = field == Field::complex ? 2 * cols : cols;

  std::vector<Scalar> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError("matrix: expected " + std::to_string(rows) + " rows, got " +
                       std::to_string(i));
    }
    const auto tokens = split_tokens(line);
    if (tokens.size() != per_row) {
      throw ParseError("matrix: row " + std::to_string(i) + " has " +
                       std::to_string(tokens.size()) + " values, expected " +
                       std::to_string(per_row));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (field == Field::complex) {
        data.emplace_back(parse_double(tokens[2 * j]), parse_double(tokens[2 * j + 1]));
      } else {
        data.emplace_back(parse_double(tokens[j]), 0.0);
      }
    }
  }
  return Matrix::from_data(rows, cols, field, std::move(data));
}

Matrix matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

}  // namespace grassgeo
