#include "gsr/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "gsr/random.hpp"

namespace gsr {

Signal make_synthetic_image(std::size_t w, std::uint64_t seed) {
  if (w == 0) throw config_error("make_synthetic_image: w must be positive");
  Rng rng(seed);

  struct Bump {
    double cx, cy, sigma, amplitude;
  };
  constexpr int kBumps = 7;
  std::vector<Bump> bumps;
  bumps.reserve(kBumps);
  for (int i = 0; i < kBumps; ++i)
    bumps.push_back({rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9),
                     rng.uniform(0.06, 0.22), rng.uniform(0.3, 1.0)});

  Signal img = Signal::zeros(Shape{w, w});
  for (std::size_t i = 0; i < w; ++i) {
    const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(w);
    for (std::size_t j = 0; j < w; ++j) {
      const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(w);
      double v = 0.0;
      for (const Bump& b : bumps) {
        const double dx = x - b.cx, dy = y - b.cy;
        v += b.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
      }
      img.at(i, j) = v;
    }
  }

  const auto [lo_it, hi_it] = std::minmax_element(img.begin(), img.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = hi > lo ? hi - lo : 1.0;
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = (img[i] - lo) / span;
  return img;
}

} // namespace gsr
