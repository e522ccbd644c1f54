#pragma once

// Riemannian gradient ascent of xi -> <xi, A> over rank-n projections,
// which converges to the projection onto the dominant n-dimensional
// invariant subspace of a self-adjoint A.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

struct DescentConfig {
  double step_size = 0.1;
  int max_iters = 500;
  double grad_tol = 1e-8;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DescentStep {
  int iter = 0;
  double objective = 0.0;
  double grad_norm = 0.0;
};

enum class DescentStatus {
  converged,  // gradient norm <= grad_tol
  max_iters,  // iteration budget exhausted
  stalled,    // no step of any tried length increased the objective
};

std::string to_string(DescentStatus status);

struct DescentTrace {
  std::vector<DescentStep> iterates;
  GrassmannPoint final_point;
  DescentStatus status = DescentStatus::max_iters;
};

/// Ascent from a random rank-n point drawn with cfg.seed. Each step moves
/// along the geodesic in the gradient direction by min(step_size, |grad|),
/// halving the length (at most 30 times) until the objective increases by
/// at least half of the first-order prediction length * |grad|.
/// The recorded objective starts at <xi_0, A> and is advanced by the
/// increment <f(1) - xi, A> of each accepted step, so the trace is
/// nondecreasing by construction.
DescentTrace dominant_subspace(const Matrix& a, std::size_t n, const DescentConfig& cfg);

/// Projection onto the span of the eigenvectors of the n largest eigenvalues.
GrassmannPoint dominant_projection(const Matrix& a, std::size_t n);

/// `iter,objective,grad_norm` header followed by one row per iterate.
void write_trace_csv(std::ostream& out, const DescentTrace& trace);

}  // namespace grassgeo
