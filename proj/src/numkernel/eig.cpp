#include <algorithm>
#include <cmath>
#include <numeric>

#include "grassgeo/numkernel.hpp"

namespace grassgeo {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary U = diag(1, conj(phase)) * R, where
// phase = a(p,q)/|a(p,q)| and R is the real Jacobi rotation of the
// resulting real symmetric 2x2 block. Applies A <- U* A U and V <- V U.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Scalar apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Scalar phase_conj = std::conj(apq) / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Scalar upp = c;
  const Scalar upq = s;
  const Scalar uqp = -s * phase_conj;
  const Scalar uqq = c * phase_conj;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {  // A <- A U
    const Scalar akp = a(k, p);
    const Scalar akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- U* A
    const Scalar apk = a(p, k);
    const Scalar aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {  // V <- V U
    const Scalar vkp = v(k, p);
    const Scalar vkq = v(k, q);
    v(k, p) = vkp * upp + vkq * uqp;
    v(k, q) = vkp * upq + vkq * uqq;
  }
}

void normalize_phase(Matrix& v, std::size_t col) {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const double m = std::abs(v(i, col));
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  const Scalar z = v(best, col);
  const Scalar rot = std::conj(z) / best_mag;
  for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) *= rot;
  v(best, col) = v(best, col).real();
}

}  // namespace

EigenDecomposition eig_hermitian(const Matrix& input, double tol) {
  if (!input.is_square()) throw ShapeError("eig_hermitian: matrix is not square");
  const std::size_t n = input.rows();
  const Field field = input.field();
  const Matrix sym = hermitian_part(input);
  Matrix a = sym;
  Matrix v = Matrix::identity(n, field);
  const double target = tol * frobenius_norm(sym);

  int sweep = 0;
  bool converged = off_diagonal_norm(a) <= target;
  while (!converged && sweep < kMaxSweeps) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= target;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n, field);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    normalize_phase(out.eigenvectors, k);
  }
  if (field == Field::real) {
    for (auto& z : out.eigenvectors.data()) z = z.real();
  }

  Matrix scaled = out.eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) scaled(i, k) *= out.eigenvalues[k];
  out.residual = frobenius_norm(sym * out.eigenvectors - scaled);

  if (!converged) {
    throw ConvergenceError("eig_hermitian: no convergence after 100 sweeps (residual " +
                               format_double(out.residual) + ")",
                           out.residual);
  }
  return out;
}

Matrix hermitian_function(const EigenDecomposition& eig, const std::function<double(double)>& f,
                          Field field) {
  const Matrix& q = eig.eigenvectors;
  const std::size_t n = q.rows();
  Matrix scaled = q;
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= fk;
  }
  Matrix out = scaled * adjoint(q);
  if (field == Field::real) {
    for (auto& z : out.data()) z = z.real();
  }
  return out.with_field(field);
}

Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f) {
  return hermitian_function(eig_hermitian(a), f, a.field());
}

TrigPair matrix_trig(const EigenDecomposition& eig, double t, Field field) {
  const std::size_t n = eig.eigenvectors.rows();
  if (t == 0.0) return {Matrix::identity(n, field), Matrix::zeros(n, n, field)};
  return {hermitian_function(eig, [t](double x) { return std::cos(t * x); }, field),
          hermitian_function(eig, [t](double x) { return std::sin(t * x); }, field)};
}

TrigPair matrix_trig(const Matrix& a, double t) {
  if (!a.is_square()) throw ShapeError("matrix_trig: matrix is not square");
  if (t == 0.0) {
    return {Matrix::identity(a.rows(), a.field()), Matrix::zeros(a.rows(), a.rows(), a.field())};
  }
  return matrix_trig(eig_hermitian(a), t, a.field());
}

}  // namespace grassgeo
