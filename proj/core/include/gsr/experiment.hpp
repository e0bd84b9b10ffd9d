#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gsr/signal.hpp"

namespace gsr {

/// Methods a sweep may evaluate.
enum class Method { consistent, g1, g2, g3, minimax, alpha, regularized };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentConfig {
  std::string image_path;      // empty: use the synthetic image
  std::size_t image_size = 128; // side length of the synthetic image
  std::size_t r = 2;
  std::vector<std::size_t> k_values;
  std::vector<double> alpha_values;
  double noise_variance = 0.0;
  std::uint64_t seed = 0;
  int max_iter = 200;
  double tol = 1e-8;
  std::vector<Method> methods; // empty: all
  std::vector<double> rho_values;
  bool emit_images = false;
  std::string output_dir;

  bool wants(Method m) const;
};

/// Parses a `key = value` config file ('#' comments; list values
/// comma-separated).
ExperimentConfig load_config(const std::string& path);

/// One sweep point.
struct ExperimentRecord {
  std::string method;
  std::size_t k = 0;
  double k_scale = 0.0;
  double alpha_or_rho = 0.0;
  double psnr_db = 0.0;
  int cg_iterations = 0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  std::string extra;
};

/// Fixed-header CSV with '.' decimals, byte-deterministic for a given record
/// list.
void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out);
void write_csv_file(const std::vector<ExperimentRecord>& records,
                    const std::string& path);

/// Loads cfg.image_path, or synthesizes the seeded test image when the path
/// is empty. The image must be square with side divisible by cfg.r.
Signal load_experiment_image(const ExperimentConfig& cfg);

/// Noise-free k_scale sweep of consistent/generalized/minimax/alpha(0.7),
/// plus an alpha sweep at the most oversampled k.
std::vector<ExperimentRecord> run_experiment1(const ExperimentConfig& cfg);

/// Noisy-sample sweeps; each record's extra field carries the realized noise
/// norm, the reconstruction-set gap and both noise-rule alpha suggestions.
std::vector<ExperimentRecord> run_experiment2(const ExperimentConfig& cfg);

/// Regularized-vs-combination comparison across rho_values; demonstrates the
/// one-solve-vs-many-solves cost asymmetry via solve counters.
std::vector<ExperimentRecord> run_experiment3(const ExperimentConfig& cfg);

/// Truncated-CG comparison of the three generalized implementations and the
/// derived alpha combinations, for max_iter = 1 .. cfg.max_iter.
std::vector<ExperimentRecord> run_experiment4(const ExperimentConfig& cfg);

} // namespace gsr
