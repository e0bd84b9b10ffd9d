#include "gsr/image_subspaces.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "gsr/random.hpp"

namespace gsr {

namespace {

// FFTW plan creation is not thread-safe; execution is.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

void require_square(const Signal& f, std::size_t w, const char* who) {
  if (f.shape().rows != w || f.shape().cols != w) {
    if (f.size() == w * w) return; // flat vector of the right length is fine
    throw config_error(std::string(who) + ": expected a " + std::to_string(w) +
                       "x" + std::to_string(w) + " image, got " +
                       std::to_string(f.shape().rows) + "x" +
                       std::to_string(f.shape().cols));
  }
}

std::size_t square_side(const Signal& f, const char* who) {
  const std::size_t rows = f.shape().rows;
  const std::size_t cols = f.shape().cols;
  if (rows == cols) return rows;
  // Accept flat vectors whose length is a perfect square.
  const auto n = f.size();
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
  if (side * side == n) return side;
  throw config_error(std::string(who) + ": input is not square");
}

Signal run_r2r_2d(const Signal& in, std::size_t w, fftw_r2r_kind kind) {
  std::vector<double> src(in.values());
  std::vector<double> dst(src.size());
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_r2r_2d(static_cast<int>(w), static_cast<int>(w),
                                      src.data(), dst.data(), kind, kind,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  return Signal(std::move(dst), Shape{w, w});
}

} // namespace

Signal downsample(const Signal& f, const BlockSamplingScheme& scheme) {
  require_square(f, scheme.w, "downsample");
  const std::size_t w = scheme.w, r = scheme.r, m = scheme.low_side();
  Signal out = Signal::zeros(Shape{m, m});
  const double inv = 1.0 / static_cast<double>(r * r);
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          sum += f.data()[(bi * r + i) * w + (bj * r + j)];
      out.at(bi, bj) = sum * inv;
    }
  return out;
}

Signal upsample(const Signal& f_low, const BlockSamplingScheme& scheme) {
  const std::size_t w = scheme.w, r = scheme.r, m = scheme.low_side();
  if (f_low.size() != m * m)
    throw config_error("upsample: expected a " + std::to_string(m) + "x" +
                       std::to_string(m) + " low-resolution image");
  Signal out = Signal::zeros(Shape{w, w});
  for (std::size_t bi = 0; bi < m; ++bi)
    for (std::size_t bj = 0; bj < m; ++bj) {
      const double v = f_low.data()[bi * m + bj];
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          out.at(bi * r + i, bj * r + j) = v;
    }
  return out;
}

LinearOperator make_sampling_projector(const BlockSamplingScheme& scheme) {
  const std::size_t n = scheme.w * scheme.w;
  return LinearOperator(
      [scheme](const Signal& x) {
        return upsample(downsample(x.reshaped(Shape{scheme.w, scheme.w}), scheme),
                        scheme);
      },
      n, "S");
}

Signal dct2(const Signal& f) {
  const std::size_t w = square_side(f, "dct2");
  Signal out = run_r2r_2d(f.reshaped(Shape{w, w}), w, FFTW_REDFT10);
  // Orthonormal scaling: per-dimension factor 0.5*sqrt(1/w) for index 0 and
  // 0.5*sqrt(2/w) otherwise.
  const double a0 = 0.5 * std::sqrt(1.0 / static_cast<double>(w));
  const double a1 = 0.5 * std::sqrt(2.0 / static_cast<double>(w));
  for (std::size_t i = 0; i < w; ++i) {
    const double ai = i == 0 ? a0 : a1;
    for (std::size_t j = 0; j < w; ++j)
      out.at(i, j) *= ai * (j == 0 ? a0 : a1);
  }
  return out;
}

Signal idct2(const Signal& coeffs) {
  const std::size_t w = square_side(coeffs, "idct2");
  Signal scaled = coeffs.reshaped(Shape{w, w});
  const double c0 = std::sqrt(1.0 / static_cast<double>(w));
  const double c1 = 0.5 * std::sqrt(2.0 / static_cast<double>(w));
  for (std::size_t i = 0; i < w; ++i) {
    const double ci = i == 0 ? c0 : c1;
    for (std::size_t j = 0; j < w; ++j)
      scaled.at(i, j) *= ci * (j == 0 ? c0 : c1);
  }
  return run_r2r_2d(scaled, w, FFTW_REDFT01);
}

namespace {

Signal mask_low_band(Signal coeffs, std::size_t w, std::size_t k) {
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < w; ++j)
      if (i >= k || j >= k) coeffs.at(i, j) = 0.0;
  return coeffs;
}

} // namespace

LinearOperator make_guiding_projector(const DctGuidingScheme& scheme) {
  const std::size_t n = scheme.w * scheme.w;
  return LinearOperator(
      [scheme](const Signal& x) {
        return idct2(mask_low_band(dct2(x.reshaped(Shape{scheme.w, scheme.w})),
                                   scheme.w, scheme.k));
      },
      n, "T");
}

SynthesisPair make_guiding_synthesis_pair(const DctGuidingScheme& scheme) {
  const std::size_t n = scheme.w * scheme.w;
  LinearOperator analysis(
      [scheme](const Signal& x) {
        return mask_low_band(dct2(x.reshaped(Shape{scheme.w, scheme.w})),
                             scheme.w, scheme.k);
      },
      n, "Bt*");
  LinearOperator synthesis(
      [scheme](const Signal& y) {
        return idct2(y.reshaped(Shape{scheme.w, scheme.w}));
      },
      n, "Bt");
  return {std::move(analysis), std::move(synthesis)};
}

Signal add_noise(const Signal& f, const NoiseModel& model) {
  if (model.variance < 0.0)
    throw config_error("add_noise: variance must be >= 0");
  if (model.variance == 0.0) return f;
  Rng rng(model.seed);
  Signal out = f;
  const double stddev = std::sqrt(model.variance);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += stddev * rng.gaussian();
  return out;
}

double psnr(const Signal& reference, const Signal& estimate) {
  if (reference.shape() != estimate.shape())
    throw dimension_error("psnr: shape mismatch");
  const double rmse =
      distance(reference, estimate) / std::sqrt(static_cast<double>(reference.size()));
  if (rmse == 0.0) return kPsnrCapDb;
  const double db = 20.0 * std::log10(1.0 / rmse);
  return db > kPsnrCapDb ? kPsnrCapDb : db;
}

} // namespace gsr
