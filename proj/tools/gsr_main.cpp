// Command-line surface for guided signal reconstruction and image
// magnification experiments.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "gsr/cg.hpp"
#include "gsr/experiment.hpp"
#include "gsr/image_subspaces.hpp"
#include "gsr/pgm.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/synthetic.hpp"

namespace {

struct CommonOpts {
  std::size_t factor = 2;
  std::size_t band = 0;
  double alpha = 1.0;
  double rho = -1.0;
  int max_iter = 200;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  double noise_var = 0.0;
  std::string noise_rule = "quadratic";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--factor", o.factor, "Downsampling factor r");
  cmd->add_option("--band", o.band, "Retained DCT band k per dimension");
  auto* alpha = cmd->add_option("--alpha", o.alpha, "Combination weight in [0,1]");
  auto* rho = cmd->add_option("--rho", o.rho, "Regularization weight (> 0)");
  alpha->excludes(rho);
  rho->excludes(alpha);
  cmd->add_option("--max-iter", o.max_iter, "CG iteration cap");
  cmd->add_option("--tol", o.tol, "CG relative residual tolerance");
  cmd->add_option("--seed", o.seed, "Deterministic RNG seed");
  cmd->add_option("--noise-var", o.noise_var, "Gaussian noise variance on [0,1] scale");
  cmd->add_option("--noise-rule", o.noise_rule, "Noise-driven alpha rule")
      ->check(CLI::IsMember({"linear", "quadratic"}));
}

double resolve_alpha(const CommonOpts& o) {
  if (o.rho >= 0.0)
    return gsr::rho_alpha_convert(o.rho, gsr::AlphaRhoDirection::rho_to_alpha);
  if (o.alpha < 0.0 || o.alpha > 1.0)
    throw gsr::config_error("alpha must lie in [0, 1]");
  return o.alpha;
}

int run_magnify(const std::string& input, const std::string& output,
                CommonOpts& o) {
  const gsr::Signal low = gsr::read_pgm(input);
  if (low.shape().rows != low.shape().cols)
    throw gsr::config_error("magnify: input must be square");
  const std::size_t w = low.shape().rows * o.factor;
  const std::size_t band = o.band == 0 ? low.shape().rows : o.band;

  gsr::BlockSamplingScheme sampling(w, o.factor);
  gsr::DctGuidingScheme guiding(w, band);

  gsr::Signal measured = low;
  if (o.noise_var > 0.0)
    measured = gsr::add_noise(low, {o.noise_var, o.seed});
  const gsr::Signal f_du = gsr::upsample(measured, sampling);

  gsr::ReconstructionProblem problem{gsr::make_sampling_projector(sampling),
                                     gsr::make_guiding_projector(guiding),
                                     f_du,
                                     gsr::make_guiding_synthesis_pair(guiding)};
  const gsr::CgParams params{o.tol, o.max_iter, std::nullopt};

  gsr::CgStats stats;
  const gsr::ReconstructionSet set =
      gsr::make_reconstruction_set(problem, params, &stats);
  const double alpha = resolve_alpha(o);
  const gsr::Signal result = set.point(alpha);
  gsr::write_pgm(result, output);

  // Expected ambient-space noise norm for the configured variance.
  const double m = static_cast<double>(sampling.low_side());
  const double noise_norm =
      std::sqrt(o.noise_var) * m * static_cast<double>(o.factor);
  const auto lin = gsr::alpha_from_noise(noise_norm, set, gsr::NoiseRule::linear);
  const auto quad =
      gsr::alpha_from_noise(noise_norm, set, gsr::NoiseRule::quadratic);

  std::printf("gap            %.6g\n", set.gap);
  std::printf("cg iterations  %d (relative residual %.3g, %s)\n",
              stats.iterations, stats.final_relative_residual,
              stats.converged ? "converged" : "not converged");
  std::printf("alpha used     %.6g\n", alpha);
  std::printf("alpha (linear rule)     %.6g\n", lin.alpha);
  std::printf("alpha (quadratic rule)  %.6g\n", quad.alpha);
  return 0;
}

int run_reconstruct(const std::string& input, const std::string& output,
                    const std::string& method, CommonOpts& o) {
  const gsr::Signal f = gsr::read_pgm(input);
  if (f.shape().rows != f.shape().cols)
    throw gsr::config_error("reconstruct: input must be square");
  const std::size_t w = f.shape().rows;
  const std::size_t band = o.band == 0 ? w : o.band;

  gsr::BlockSamplingScheme sampling(w, o.factor);
  gsr::DctGuidingScheme guiding(w, band);

  gsr::Signal f_d = gsr::downsample(f, sampling);
  if (o.noise_var > 0.0) f_d = gsr::add_noise(f_d, {o.noise_var, o.seed});
  const gsr::Signal f_du = gsr::upsample(f_d, sampling);

  gsr::ReconstructionProblem problem{gsr::make_sampling_projector(sampling),
                                     gsr::make_guiding_projector(guiding),
                                     f_du,
                                     gsr::make_guiding_synthesis_pair(guiding)};
  const gsr::CgParams params{o.tol, o.max_iter, std::nullopt};

  gsr::Signal result;
  const gsr::Method m = gsr::method_from_name(method);
  switch (m) {
    case gsr::Method::consistent:
      result = gsr::consistent_reconstruction(problem, params).first;
      break;
    case gsr::Method::g1:
      result = gsr::generalized_g1(problem, params).first;
      break;
    case gsr::Method::g2:
      result = gsr::generalized_g2(problem, params).first;
      break;
    case gsr::Method::g3:
      result = gsr::generalized_g3(
          problem.T, gsr::consistent_reconstruction(problem, params).first);
      break;
    case gsr::Method::minimax:
      result = gsr::minimax_regret(problem.T, f_du);
      break;
    case gsr::Method::alpha: {
      const gsr::ReconstructionSet set =
          gsr::make_reconstruction_set(problem, params);
      result = set.point(resolve_alpha(o));
      break;
    }
    case gsr::Method::regularized: {
      if (o.rho <= 0.0)
        throw gsr::config_error("reconstruct: --rho > 0 required for regularized");
      result = gsr::regularized_reconstruction(problem, o.rho, params).first;
      break;
    }
  }

  gsr::write_pgm(result, output);
  std::printf("psnr  %.4f dB\n", gsr::psnr(f, result));
  return 0;
}

int run_verify(std::size_t w, std::size_t r, std::size_t k, int probes,
               std::uint64_t seed) {
  gsr::BlockSamplingScheme sampling(w, r);
  gsr::DctGuidingScheme guiding(w, k);
  const auto S = gsr::make_sampling_projector(sampling);
  const auto T = gsr::make_guiding_projector(guiding);

  bool ok = true;
  for (const auto* op : {&S, &T}) {
    const gsr::ProjectorReport rep = gsr::verify_projector(*op, probes, seed);
    std::printf("%s: idempotency %.3e, self-adjointness %.3e (%d probes)\n",
                op->label().c_str(), rep.max_idempotency_residual,
                rep.max_self_adjoint_residual, rep.probes);
    if (rep.max_idempotency_residual > 1e-8 ||
        rep.max_self_adjoint_residual > 1e-8)
      ok = false;
  }
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guided signal reconstruction and image magnification"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string input, output = "out.pgm", method = "alpha";
  std::string config_path, csv_path;
  bool emit_images = false;
  std::string output_dir;

  auto* magnify = app.add_subcommand(
      "magnify", "Magnify a low-resolution image by the sampling factor");
  magnify->add_option("input", input, "Low-resolution PGM")->required();
  magnify->add_option("--output", output, "Output PGM path");
  add_common(magnify, opts);

  auto* reconstruct = app.add_subcommand(
      "reconstruct", "Reconstruct a full-resolution image from its projection");
  reconstruct->add_option("input", input, "Full-resolution PGM")->required();
  reconstruct->add_option("--output", output, "Output PGM path");
  reconstruct->add_option("--method", method,
                          "consistent|g1|g2|g3|minimax|alpha|regularized");
  add_common(reconstruct, opts);

  struct ExpCmd {
    CLI::App* cmd;
    int index;
  };
  std::vector<ExpCmd> experiments;
  for (int i = 1; i <= 4; ++i) {
    auto* cmd = app.add_subcommand("experiment" + std::to_string(i),
                                   "Run experiment sweep " + std::to_string(i));
    cmd->add_option("--config", config_path, "key = value config file")->required();
    cmd->add_option("--output", csv_path, "CSV output path");
    cmd->add_flag("--emit-images", emit_images, "Write per-point reconstructions");
    cmd->add_option("--output-dir", output_dir, "Directory for emitted images");
    experiments.push_back({cmd, i});
  }

  std::size_t v_size = 64, v_factor = 2, v_band = 8;
  int v_probes = 16;
  std::uint64_t v_seed = 1;
  auto* verify = app.add_subcommand(
      "verify", "Certify the sampling and guiding projectors");
  verify->add_option("--size", v_size, "Image side length w");
  verify->add_option("--factor", v_factor, "Downsampling factor r");
  verify->add_option("--band", v_band, "Retained DCT band k");
  verify->add_option("--probes", v_probes, "Random probe count");
  verify->add_option("--seed", v_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (magnify->parsed()) return run_magnify(input, output, opts);
    if (reconstruct->parsed()) return run_reconstruct(input, output, method, opts);
    if (verify->parsed())
      return run_verify(v_size, v_factor, v_band, v_probes, v_seed);

    for (const auto& [cmd, index] : experiments) {
      if (!cmd->parsed()) continue;
      gsr::ExperimentConfig cfg = gsr::load_config(config_path);
      if (emit_images) cfg.emit_images = true;
      if (!output_dir.empty()) cfg.output_dir = output_dir;
      std::vector<gsr::ExperimentRecord> records;
      switch (index) {
        case 1: records = gsr::run_experiment1(cfg); break;
        case 2: records = gsr::run_experiment2(cfg); break;
        case 3: records = gsr::run_experiment3(cfg); break;
        case 4: records = gsr::run_experiment4(cfg); break;
      }
      const std::string path =
          csv_path.empty() ? "experiment" + std::to_string(index) + ".csv"
                           : csv_path;
      gsr::write_csv_file(records, path);
      std::printf("wrote %zu records to %s\n", records.size(), path.c_str());
      return 0;
    }
  } catch (const gsr::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
