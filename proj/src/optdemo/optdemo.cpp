#include "grassgeo/optdemo.hpp"

#include <algorithm>
#include <ostream>

namespace grassgeo {

namespace {

// Fraction of the first-order gain length * |grad| a step must achieve.
// With 1/2 every accepted step shrinks each eigen-direction component of
// the error by a factor in [0, 1) in the quadratic model.
constexpr double kSufficientIncrease = 0.5;

}  // namespace

void DescentConfig::validate() const {
  if (!(step_size > 0.0)) throw DomainError("DescentConfig: step_size must be positive");
  if (max_iters < 0) throw DomainError("DescentConfig: max_iters must be nonnegative");
  if (!(grad_tol >= 0.0)) throw DomainError("DescentConfig: grad_tol must be nonnegative");
}

std::string to_string(DescentStatus status) {
  switch (status) {
    case DescentStatus::converged: return "converged";
    case DescentStatus::max_iters: return "max_iters";
    case DescentStatus::stalled: return "stalled";
  }
  return "unknown";
}

DescentTrace dominant_subspace(const Matrix& a, std::size_t n, const DescentConfig& cfg) {
  cfg.validate();
  if (!a.is_square()) throw ShapeError("dominant_subspace: matrix is not square");
  if (hermitian_defect(a) > default_tolerances().validation * std::max(1.0, frobenius_norm(a))) {
    throw DomainError("dominant_subspace: matrix is not self-adjoint");
  }
  if (n < 1 || n > a.rows()) throw DomainError("dominant_subspace: need 1 <= n <= N");

  Rng rng(cfg.seed);
  GrassmannPoint xi = random_point(rng, a.rows(), n, a.field());
  double objective = hs_inner(xi.proj(), a);

  DescentTrace trace{{}, xi, DescentStatus::max_iters};
  for (int iter = 0;; ++iter) {
    // The first projection leaves a normal residue of order eps * |A|, which
    // is large relative to a small gradient and would feed a first-order
    // error into every gain. Projecting again reduces it to eps * |grad|.
    const Matrix grad = tangent_project(xi, tangent_project(xi, a).mat()).mat();
    const double grad_norm = frobenius_norm(grad);
    trace.iterates.push_back({iter, objective, grad_norm});
    if (grad_norm <= cfg.grad_tol) {
      trace.status = DescentStatus::converged;
      break;
    }
    if (iter >= cfg.max_iters) break;

    const Matrix direction = (1.0 / grad_norm) * grad;
    double length = std::min(cfg.step_size, grad_norm);
    bool accepted = false;
    for (int halvings = 0; halvings <= 30 && !accepted; ++halvings, length *= 0.5) {
      const Matrix step = Geodesic(xi, length * direction).displacement(1.0);
      const double gain = hs_inner(step, a);
      if (gain > 0.0 && gain >= kSufficientIncrease * length * grad_norm) {
        xi = renormalize(xi.proj() + step);
        objective += gain;
        accepted = true;
      }
    }
    if (!accepted) {
      trace.status = DescentStatus::stalled;
      break;
    }
  }
  trace.final_point = xi;
  return trace;
}

GrassmannPoint dominant_projection(const Matrix& a, std::size_t n) {
  if (n > a.rows()) throw DomainError("dominant_projection: n exceeds the dimension");
  const auto eig = eig_hermitian(a);
  const std::size_t big_n = a.rows();
  const Matrix top = column_block(eig.eigenvectors, big_n - n, n);
  return GrassmannPoint::from_matrix(top * adjoint(top));
}

void write_trace_csv(std::ostream& out, const DescentTrace& trace) {
  out << "iter,objective,grad_norm\n";
  for (const auto& s : trace.iterates) {
    out << s.iter << ',' << format_double(s.objective) << ',' << format_double(s.grad_norm) << '\n';
  }
}

}  // namespace grassgeo
