#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "grassgeo/numkernel.hpp"

namespace grassgeo {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

}  // namespace

std::string to_string(Field field) { return field == Field::real ? "real" : "complex"; }

Field parse_field(const std::string& text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  throw ParseError("unknown field '" + text + "' (expected real or complex)");
}

const Tolerances& default_tolerances() {
  static const Tolerances tolerances = [] {
    Tolerances t;
    if (const char* env = std::getenv("GRASSGEO_TOL"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const double value = std::strtod(env, &end);
      if (end != env && *end == '\0' && value > 0.0 && std::isfinite(value)) {
        t.validation = value;
      }
    }
    return t;
  }();
  return tolerances;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols, Field field) {
  return Matrix(rows, cols, field);
}

Matrix Matrix::identity(std::size_t n, Field field) {
  Matrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values, Field field) {
  Matrix m(values.size(), values.size(), field);
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c, Field::real);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c, Field::complex);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("from_rows: ragged rows");
    std::size_t j = 0;
    for (Scalar v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::from_data(std::size_t rows, std::size_t cols, Field field,
                         std::vector<Scalar> data) {
  if (data.size() != rows * cols) throw ShapeError("from_data: entry count != rows*cols");
  if (field == Field::real &&
      std::any_of(data.begin(), data.end(), [](Scalar z) { return z.imag() != 0.0; })) {
    throw ShapeError("from_data: nonzero imaginary part in a real matrix");
  }
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.field_ = field;
  m.data_ = std::move(data);
  return m;
}

Matrix Matrix::with_field(Field field) const {
  if (field == field_) return *this;
  if (field == Field::real &&
      std::any_of(data_.begin(), data_.end(), [](Scalar z) { return z.imag() != 0.0; })) {
    throw ShapeError("with_field: cannot demote a matrix with imaginary entries to real");
  }
  Matrix m = *this;
  m.field_ = field;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  field_ = join(field_, other.field_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  field_ = join(field_, other.field_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator-(Matrix a) {
  for (auto& z : a.data()) z = -z;
  return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  }
  Matrix c(a.rows(), b.cols(), join(a.field(), b.field()));
  const std::size_t inner = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < inner; ++k) {
      const Scalar aik = a(i, k);
      if (aik == Scalar{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator*(double s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, double s) { return a *= s; }

Matrix operator*(Scalar s, const Matrix& a) {
  std::vector<Scalar> data(a.data().begin(), a.data().end());
  for (auto& z : data) z *= s;
  const Field field = s.imag() == 0.0 ? a.field() : Field::complex;
  return Matrix::from_data(a.rows(), a.cols(), field, std::move(data));
}

Matrix adjoint(const Matrix& m) {
  Matrix t(m.cols(), m.rows(), m.field());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = std::conj(m(i, j));
  return t;
}

Scalar trace(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("trace: matrix is not square");
  Scalar s{};
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (Scalar z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

Scalar hs_inner_complex(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hs_inner");
  if (a.field() != b.field()) throw ShapeError("hs_inner: field mismatch");
  Scalar s{};
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) s += std::conj(da[k]) * db[k];
  return s;
}

double hs_inner(const Matrix& a, const Matrix& b) { return hs_inner_complex(a, b).real(); }

Matrix hermitian_part(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("hermitian_part: matrix is not square");
  return 0.5 * (m + adjoint(m));
}

double hermitian_defect(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("hermitian_defect: matrix is not square");
  return frobenius_norm(adjoint(m) - m);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix column_block(const Matrix& m, std::size_t first, std::size_t count) {
  if (first + count > m.cols()) throw ShapeError("column_block: range exceeds column count");
  Matrix out(m.rows(), count, m.field());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = m(i, first + j);
  return out;
}

Matrix hconcat(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) throw ShapeError("hconcat: row counts differ");
  Matrix out(left.rows(), left.cols() + right.cols(), join(left.field(), right.field()));
  for (std::size_t i = 0; i < left.rows(); ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
  }
  return out;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("inverse: matrix is not square");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n, m.field());
  const double scale = std::max(frobenius_norm(m), 1e-300);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) <= 1e-14 * scale) throw DomainError("inverse: matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Scalar p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar f = a(r, col);
      if (f == Scalar{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Matrix orthonormalize_columns(const Matrix& m) {
  Matrix q = m;
  const std::size_t rows = m.rows();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double original = 0.0;
    for (std::size_t i = 0; i < rows; ++i) original += std::norm(q(i, j));
    original = std::sqrt(original);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Scalar proj{};
        for (std::size_t i = 0; i < rows; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < rows; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    if (norm <= 1e-12 * std::max(original, 1e-300)) {
      throw DomainError("orthonormalize_columns: column " + std::to_string(j) +
                        " is linearly dependent on the previous ones");
    }
    for (std::size_t i = 0; i < rows; ++i) q(i, j) /= norm;
  }
  return q;
}

double min_singular_value(const Matrix& m) {
  if (m.cols() == 0 || m.rows() == 0) return 0.0;
  const auto eig = eig_hermitian(adjoint(m) * m);
  return std::sqrt(std::max(eig.eigenvalues.front(), 0.0));
}

}  // namespace grassgeo
