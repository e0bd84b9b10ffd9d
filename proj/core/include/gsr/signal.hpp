#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gsr/errors.hpp"

namespace gsr {

/// Grid metadata of a signal: rows x cols, row-major storage.
struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::size_t size() const { return rows * cols; }
  bool operator==(const Shape&) const = default;
};

/// An element of the ambient space H: a flat real vector with grid metadata.
/// Entries are kept finite; construction rejects NaN/Inf.
class Signal {
public:
  Signal() = default;

  Signal(std::vector<double> values, Shape shape)
      : values_(std::move(values)), shape_(shape) {
    if (values_.size() != shape_.size())
      throw dimension_error("Signal: length " + std::to_string(values_.size()) +
                            " does not match shape " + std::to_string(shape_.rows) +
                            "x" + std::to_string(shape_.cols));
    for (double v : values_)
      if (!std::isfinite(v)) throw numerical_error("Signal: non-finite entry");
  }

  /// 1 x n row vector.
  static Signal flat(std::vector<double> values) {
    Shape s{1, values.size()};
    return Signal(std::move(values), s);
  }

  static Signal zeros(Shape shape) {
    return Signal(std::vector<double>(shape.size(), 0.0), shape);
  }

  std::size_t size() const { return values_.size(); }
  const Shape& shape() const { return shape_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * shape_.cols + col];
  }
  double& at(std::size_t row, std::size_t col) {
    return values_[row * shape_.cols + col];
  }

  const std::vector<double>& values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// this += a * x
  Signal& axpy(double a, const Signal& x) {
    require_same_size(x);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * x.values_[i];
    return *this;
  }

  Signal& scale(double a) {
    for (double& v : values_) v *= a;
    return *this;
  }

  /// Copy with the same data but different grid metadata (size must match).
  Signal reshaped(Shape shape) const { return Signal(values_, shape); }

  void require_same_size(const Signal& other) const {
    if (values_.size() != other.values_.size())
      throw dimension_error("Signal: size mismatch (" + std::to_string(values_.size()) +
                            " vs " + std::to_string(other.values_.size()) + ")");
  }

private:
  std::vector<double> values_;
  Shape shape_;
};

/// Euclidean inner product Sum a_i b_i.
inline double inner_product(const Signal& a, const Signal& b) {
  a.require_same_size(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Signal& a) { return std::sqrt(inner_product(a, a)); }

inline Signal operator+(Signal a, const Signal& b) { return a.axpy(1.0, b); }
inline Signal operator-(Signal a, const Signal& b) { return a.axpy(-1.0, b); }
inline Signal operator*(double a, Signal x) { return x.scale(a); }

inline double distance(const Signal& a, const Signal& b) { return norm(a - b); }

} // namespace gsr
