#include "gsr/cg.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace gsr {

namespace {

std::atomic<std::int64_t> g_invocations{0};

bool all_finite(const Signal& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

} // namespace

std::int64_t cg_invocation_count() { return g_invocations.load(); }

CgResult cg_solve(const LinearOperator& A, const Signal& b,
                  const CgParams& params) {
  return cg_solve(A, b, Signal::zeros(b.shape()), params);
}

CgResult cg_solve(const LinearOperator& A, const Signal& b, const Signal& x0,
                  const CgParams& params) {
  if (params.tol <= 0.0) throw config_error("cg_solve: tol must be positive");
  if (params.max_iter < 1) throw config_error("cg_solve: max_iter must be >= 1");
  if (b.size() != A.dim() || x0.size() != A.dim())
    throw dimension_error("cg_solve: b/x0 size does not match operator " +
                          A.label());

  g_invocations.fetch_add(1);

  const auto& D = params.domain_projector;
  const double norm_x0 = norm(x0);
  if (D && norm_x0 > 0.0) {
    // x0 must already lie in the solution domain.
    if (distance((*D)(x0), x0) > params.tol * norm_x0)
      throw config_error("cg_solve: x0 is not in the range of the domain projector");
  }

  CgResult out{x0, {}};
  CgStats& stats = out.stats;

  const double norm_b = norm(b);
  if (norm_b == 0.0) {
    stats.converged = true;
    stats.residual_history.push_back(0.0);
    return out;
  }

  Signal& x = out.x;
  Signal r = b - A(x);
  if (D) r = (*D)(r);

  double rel = norm(r) / norm_b;
  stats.residual_history.push_back(rel);
  stats.final_relative_residual = rel;
  if (rel <= params.tol) {
    stats.converged = true;
    return out;
  }

  Signal p = r;
  double rr = inner_product(r, r);

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    Signal ap = A(p);
    if (D) ap = (*D)(ap);
    const double p_ap = inner_product(p, ap);
    if (!std::isfinite(p_ap) || !all_finite(ap))
      throw numerical_error("cg_solve: non-finite values at iteration " +
                            std::to_string(iter));
    if (p_ap <= 0.0) {
      // PSD violated beyond round-off, or a null direction: stop with the
      // current iterate.
      break;
    }

    const double alpha = rr / p_ap;
    x.axpy(alpha, p);
    r.axpy(-alpha, ap);
    if (D) r = (*D)(r);
    if (!all_finite(x) || !all_finite(r))
      throw numerical_error("cg_solve: non-finite iterate at iteration " +
                            std::to_string(iter));

    rel = norm(r) / norm_b;
    stats.iterations = iter;
    stats.residual_history.push_back(rel);
    stats.final_relative_residual = rel;
    if (rel <= params.tol) {
      stats.converged = true;
      break;
    }

    const double rr_next = inner_product(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    p.scale(beta).axpy(1.0, r);
    if (D) p = (*D)(p);
  }

  return out;
}

} // namespace gsr
