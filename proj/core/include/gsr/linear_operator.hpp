#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "gsr/signal.hpp"

namespace gsr {

/// Action-only linear operator on R^n. Operators are never materialized as
/// matrices; everything downstream (CG, reconstructions) works through apply.
class LinearOperator {
public:
  using ApplyFn = std::function<Signal(const Signal&)>;

  LinearOperator() = default;
  LinearOperator(ApplyFn apply, std::size_t dim, std::string label)
      : apply_(std::move(apply)), dim_(dim), label_(std::move(label)) {}

  Signal operator()(const Signal& x) const {
    if (x.size() != dim_)
      throw dimension_error("operator " + label_ + ": input size " +
                            std::to_string(x.size()) + ", expected " +
                            std::to_string(dim_));
    Signal y = apply_(x);
    if (y.size() != dim_)
      throw dimension_error("operator " + label_ + ": apply changed dimension");
    return y;
  }

  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }
  bool valid() const { return static_cast<bool>(apply_); }

  static LinearOperator identity(std::size_t dim) {
    return LinearOperator([](const Signal& x) { return x; }, dim, "I");
  }

  static LinearOperator zero(std::size_t dim) {
    return LinearOperator([](const Signal& x) { return Signal::zeros(x.shape()); },
                          dim, "0");
  }

private:
  ApplyFn apply_;
  std::size_t dim_ = 0;
  std::string label_;
};

/// x - P(x). For an orthogonal projector P this is the projector onto the
/// orthogonal complement of range(P).
Signal complement_apply(const LinearOperator& P, const Signal& x);

/// The complement I - P as an operator.
LinearOperator complement(const LinearOperator& P);

/// A after B: x -> A(B(x)).
LinearOperator compose(const LinearOperator& A, const LinearOperator& B);

/// Probe-based certificate that P is an orthogonal projector.
struct ProjectorReport {
  double max_idempotency_residual = 0.0;  // max ||P(P(x)) - P(x)|| over unit x
  double max_self_adjoint_residual = 0.0; // max |<Px,y> - <x,Py>| over unit x,y
  int probes = 0;
};

/// Draws `probes` random unit vectors and reports the worst idempotency and
/// self-adjointness residuals.
ProjectorReport verify_projector(const LinearOperator& P, int probes,
                                 std::uint64_t seed);

} // namespace gsr
