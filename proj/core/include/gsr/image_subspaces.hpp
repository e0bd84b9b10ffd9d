#pragma once

#include <cstdint>

#include "gsr/linear_operator.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/signal.hpp"

namespace gsr {

/// Block-average sampling: w x w images downsized by a factor r via r x r
/// averaging. Requires w divisible by r.
struct BlockSamplingScheme {
  std::size_t w = 0;
  std::size_t r = 1;

  BlockSamplingScheme(std::size_t w_, std::size_t r_) : w(w_), r(r_) {
    if (w == 0 || r == 0 || w % r != 0)
      throw config_error("BlockSamplingScheme: need w > 0, r > 0, w mod r = 0");
  }

  std::size_t low_side() const { return w / r; }
  std::size_t sampling_dim() const { return low_side() * low_side(); }
};

/// DCT low-pass guiding subspace: images bandlimited to the lowest k x k
/// frequencies of the orthonormal 2D DCT.
struct DctGuidingScheme {
  std::size_t w = 0;
  std::size_t k = 0;

  DctGuidingScheme(std::size_t w_, std::size_t k_) : w(w_), k(k_) {
    if (w == 0 || k == 0 || k > w)
      throw config_error("DctGuidingScheme: need 1 <= k <= w");
  }
};

/// (w/r)/k; > 1 is oversampling, < 1 undersampling.
inline double k_scale(const BlockSamplingScheme& s, const DctGuidingScheme& t) {
  return static_cast<double>(s.low_side()) / static_cast<double>(t.k);
}

/// Each output pixel is the mean of its r x r source block.
Signal downsample(const Signal& f, const BlockSamplingScheme& scheme);

/// Pixel replication; inverse of downsample on block-constant images.
Signal upsample(const Signal& f_low, const BlockSamplingScheme& scheme);

/// S = upsample o downsample: replaces every r x r block by its mean.
/// An orthogonal projector onto the block-constant subspace.
LinearOperator make_sampling_projector(const BlockSamplingScheme& scheme);

/// Orthonormal 2D DCT-II and its inverse. Parseval holds: ||dct2(f)|| = ||f||.
Signal dct2(const Signal& f);
Signal idct2(const Signal& coeffs);

/// T = idct2 o mask_k o dct2, zeroing coefficients with row or column index
/// >= k. Orthogonal projector of rank k^2.
LinearOperator make_guiding_projector(const DctGuidingScheme& scheme);

/// Analysis = mask_k o dct2, synthesis = idct2; synthesis o analysis = T.
SynthesisPair make_guiding_synthesis_pair(const DctGuidingScheme& scheme);

struct NoiseModel {
  double variance = 0.0; // pixel units^2 on the [0,1] scale
  std::uint64_t seed = 0;
};

/// Adds i.i.d. zero-mean Gaussian noise, deterministic in the seed.
Signal add_noise(const Signal& f, const NoiseModel& model);

/// 20 log10(1 / RMSE) on the [0,1] scale; identical inputs report the capped
/// sentinel 99.0 dB.
double psnr(const Signal& reference, const Signal& estimate);

inline constexpr double kPsnrCapDb = 99.0;

} // namespace gsr
