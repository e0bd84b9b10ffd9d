#pragma once

#include <cstdint>

#include "gsr/signal.hpp"

namespace gsr {

/// Deterministic smooth grayscale test image: a seeded mixture of 2D Gaussian
/// bumps, normalized to [0, 1]. Used by the experiment harness so that CI
/// needs no binary image assets.
Signal make_synthetic_image(std::size_t w, std::uint64_t seed);

} // namespace gsr
