#include "gsr/linear_operator.hpp"

#include <algorithm>
#include <cmath>

#include "gsr/random.hpp"

namespace gsr {

Signal complement_apply(const LinearOperator& P, const Signal& x) {
  Signal px = P(x);
  Signal y = x;
  y.axpy(-1.0, px);
  return y;
}

LinearOperator complement(const LinearOperator& P) {
  return LinearOperator(
      [P](const Signal& x) { return complement_apply(P, x); }, P.dim(),
      P.label() + "_perp");
}

LinearOperator compose(const LinearOperator& A, const LinearOperator& B) {
  if (A.dim() != B.dim())
    throw dimension_error("compose: " + A.label() + " and " + B.label() +
                          " have different dimensions");
  return LinearOperator([A, B](const Signal& x) { return A(B(x)); }, A.dim(),
                        A.label() + B.label());
}

ProjectorReport verify_projector(const LinearOperator& P, int probes,
                                 std::uint64_t seed) {
  if (probes < 1) throw config_error("verify_projector: probes must be >= 1");
  Rng rng(seed);
  const Shape shape{1, P.dim()};
  ProjectorReport report;
  report.probes = probes;
  for (int i = 0; i < probes; ++i) {
    const Signal x = rng.unit_signal(shape);
    const Signal y = rng.unit_signal(shape);
    const Signal px = P(x);
    report.max_idempotency_residual =
        std::max(report.max_idempotency_residual, distance(P(px), px));
    report.max_self_adjoint_residual =
        std::max(report.max_self_adjoint_residual,
                 std::abs(inner_product(px, y) - inner_product(x, P(y))));
  }
  return report;
}

} // namespace gsr
