#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gsr/linear_operator.hpp"
#include "gsr/signal.hpp"

namespace gsr {

struct CgParams {
  double tol = 1e-8;  // relative residual threshold
  int max_iter = 200;
  /// Projector whose range is the solution domain (e.g. the complement of the
  /// sampling subspace). When set, direction and residual vectors are
  /// re-projected each iteration to control round-off drift.
  std::optional<LinearOperator> domain_projector;
};

struct CgStats {
  int iterations = 0;
  double final_relative_residual = 0.0;
  std::vector<double> residual_history; // relative residuals, iterations+1 entries
  bool converged = false;
};

struct CgResult {
  Signal x;
  CgStats stats;
};

/// Conjugate gradient for a self-adjoint positive-semidefinite operator.
///
/// With x0 = 0 the iterates stay in range(A), so on singular systems CG
/// converges to the minimum-norm solution. Convergence is declared when
/// ||A x - b|| <= tol * ||b||; b = 0 returns x0 immediately. A breakdown
/// (p'Ap <= 0 beyond round-off) terminates with the current iterate and
/// converged = false.
CgResult cg_solve(const LinearOperator& A, const Signal& b, const Signal& x0,
                  const CgParams& params);

/// Overload starting from the zero vector.
CgResult cg_solve(const LinearOperator& A, const Signal& b,
                  const CgParams& params);

/// Process-wide count of cg_solve invocations (solve-count telemetry for the
/// one-solve-vs-many-solves comparisons).
std::int64_t cg_invocation_count();

} // namespace gsr
