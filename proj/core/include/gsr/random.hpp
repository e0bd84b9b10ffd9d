#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gsr/signal.hpp"

namespace gsr {

/// Seeded deterministic generator. Gaussian draws use Box-Muller on top of
/// mt19937_64 so that streams are identical across standard libraries
/// (std::normal_distribution is implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal draw.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Signal gaussian_signal(Shape shape, double stddev = 1.0) {
    std::vector<double> v(shape.size());
    for (double& x : v) x = stddev * gaussian();
    return Signal(std::move(v), shape);
  }

  /// Random point on the unit sphere in R^n.
  Signal unit_signal(Shape shape) {
    Signal s = gaussian_signal(shape);
    const double n = norm(s);
    if (n > 0.0) s.scale(1.0 / n);
    return s;
  }

private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace gsr
