#pragma once

// Dense real/complex matrix arithmetic and the numerical kernels the
// geometry modules are built on: adjoints, Hilbert-Schmidt products, a
// cyclic Jacobi Hermitian eigensolver, spectral matrix functions and a
// reproducible random source.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "grassgeo/error.hpp"

namespace grassgeo {

using Scalar = std::complex<double>;

enum class Field { real, complex };

std::string to_string(Field field);
Field parse_field(const std::string& text);

/// Field of a binary operation's result: complex if either side is.
constexpr Field join(Field a, Field b) {
  return (a == Field::complex || b == Field::complex) ? Field::complex : Field::real;
}

/// Centralized default tolerances. All are relative to the Frobenius norm
/// of the operand unless a function documents otherwise.
struct Tolerances {
  double validation = 1e-9;
  double oracle = 1e-6;
  double eigensolver = 1e-12;
};

/// Process-wide defaults. The validation tolerance can be overridden once,
/// at first use, through the GRASSGEO_TOL environment variable.
const Tolerances& default_tolerances();

/// Dense row-major matrix over the reals or the complex numbers.
///
/// Entries are stored as (re, im) pairs for both fields; a real-field matrix
/// keeps every imaginary part at zero. Zero-sized dimensions are allowed so
/// that the frame of the zero subspace (N x 0) is representable.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field::real);

  static Matrix zeros(std::size_t rows, std::size_t cols, Field field = Field::real);
  static Matrix identity(std::size_t n, Field field = Field::real);
  static Matrix diagonal(std::span<const double> values, Field field = Field::real);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows);
  /// Builds a matrix from row-major data; complex data with nonzero
  /// imaginary parts is rejected for the real field.
  static Matrix from_data(std::size_t rows, std::size_t cols, Field field,
                          std::vector<Scalar> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Field field() const noexcept { return field_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_complex() const noexcept { return field_ == Field::complex; }

  Scalar operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Scalar> data() const noexcept { return data_; }
  std::span<Scalar> data() noexcept { return data_; }

  /// Same entries viewed over `field`. Demoting to real requires all
  /// imaginary parts to be exactly zero.
  Matrix with_field(Field field) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::real;
  std::vector<Scalar> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(Matrix a, double s);
/// Scaling by a complex number promotes the result to the complex field
/// unless the scalar is real.
Matrix operator*(Scalar s, const Matrix& a);

/// Conjugate transpose; (ab)* = b* a*.
Matrix adjoint(const Matrix& m);
Scalar trace(const Matrix& m);
double frobenius_norm(const Matrix& m);
/// Real Hilbert-Schmidt product Re tr(a* b). Throws ShapeError when shapes
/// or fields differ.
double hs_inner(const Matrix& a, const Matrix& b);
/// Complex Hilbert-Schmidt product tr(a* b).
Scalar hs_inner_complex(const Matrix& a, const Matrix& b);

Matrix hermitian_part(const Matrix& m);
/// ||m* - m||_F.
double hermitian_defect(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

Matrix column_block(const Matrix& m, std::size_t first, std::size_t count);
Matrix hconcat(const Matrix& left, const Matrix& right);

/// Inverse by Gauss-Jordan elimination with partial pivoting.
Matrix inverse(const Matrix& m);
/// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
/// DomainError when the columns are numerically dependent.
Matrix orthonormalize_columns(const Matrix& m);
double min_singular_value(const Matrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthonormal columns
  double residual = 0.0;            // ||A Q - Q diag(eigenvalues)||_F
  int sweeps = 0;
};

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// The input is symmetrized as (a + a*)/2 first. Iteration stops when the
/// off-diagonal Frobenius norm drops below `tol * ||a||_F`; after 100 sweeps
/// without convergence a ConvergenceError carrying the residual is thrown.
/// Each eigenvector is normalized so that its first largest-modulus entry is
/// real and positive, which makes the output deterministic.
EigenDecomposition eig_hermitian(const Matrix& a, double tol = default_tolerances().eigensolver);

/// f(a) = Q f(diag) Q* for a self-adjoint `a`.
Matrix hermitian_function(const EigenDecomposition& eig, const std::function<double(double)>& f,
                          Field field);
Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f);

struct TrigPair {
  Matrix cos_part;
  Matrix sin_part;
};

/// cos(t a) and sin(t a) for a self-adjoint `a`.
TrigPair matrix_trig(const Matrix& a, double t);
TrigPair matrix_trig(const EigenDecomposition& eig, double t, Field field);

/// xoshiro256** seeded through splitmix64. Gaussian variates use the
/// Box-Muller transform so streams are reproducible for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double uniform();
  double gaussian();

 private:
  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent standard normal entries (real and imaginary parts each
/// standard normal for the complex field).
Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols, Field field);
Matrix random_hermitian(Rng& rng, std::size_t n, Field field);
/// N x n matrix with orthonormal columns. Throws DomainError if n > N.
Matrix random_orthonormal_frame(Rng& rng, std::size_t n_ambient, std::size_t n_cols, Field field);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Text format: `rows cols field` then one line per row; complex entries are
/// written as consecutive `re im` pairs.
void write_matrix(std::ostream& out, const Matrix& m);
std::string to_text(const Matrix& m);
/// Reads one matrix, skipping leading blank lines. Throws ParseError.
Matrix read_matrix(std::istream& in);
Matrix matrix_from_text(const std::string& text);

}  // namespace grassgeo
