#include "gsr/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gsr/image_subspaces.hpp"
#include "gsr/pgm.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/synthetic.hpp"

namespace gsr {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch())
      .count();
}

std::string sanitize(double v) {
  std::string s = fmt(v);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

void maybe_emit(const ExperimentConfig& cfg, const std::string& stem,
                const Signal& image) {
  if (!cfg.emit_images) return;
  const std::string dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
  std::filesystem::create_directories(dir);
  write_pgm(image, dir + "/" + stem + ".pgm");
}

struct ImageProblem {
  Signal f;          // ground truth, w x w
  Signal f_du;       // measured projection (noisy if requested)
  double noise_norm; // ambient-space norm of the injected noise
  LinearOperator S;
  LinearOperator T;
  SynthesisPair pair;
  double scale; // k_scale
};

ImageProblem make_image_problem(const ExperimentConfig& cfg, const Signal& f,
                                std::size_t k) {
  const std::size_t w = f.shape().rows;
  BlockSamplingScheme sampling(w, cfg.r);
  DctGuidingScheme guiding(w, k);

  Signal f_d = downsample(f, sampling);
  Signal f_du_clean = upsample(f_d, sampling);
  Signal f_du = f_du_clean;
  double noise_norm = 0.0;
  if (cfg.noise_variance > 0.0) {
    // Noise enters in the low-resolution domain.
    Signal f_d_noisy = add_noise(f_d, {cfg.noise_variance, cfg.seed});
    f_du = upsample(f_d_noisy, sampling);
    noise_norm = distance(f_du, f_du_clean);
  }

  return {f,
          std::move(f_du),
          noise_norm,
          make_sampling_projector(sampling),
          make_guiding_projector(guiding),
          make_guiding_synthesis_pair(guiding),
          k_scale(sampling, guiding)};
}

CgParams solver_params(const ExperimentConfig& cfg) {
  return {cfg.tol, cfg.max_iter, std::nullopt};
}

std::size_t most_oversampled_k(const std::vector<std::size_t>& ks) {
  if (ks.empty()) throw config_error("experiment: k_values must not be empty");
  return *std::min_element(ks.begin(), ks.end());
}

} // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::consistent: return "consistent";
    case Method::g1: return "g1";
    case Method::g2: return "g2";
    case Method::g3: return "g3";
    case Method::minimax: return "minimax";
    case Method::alpha: return "alpha";
    case Method::regularized: return "regularized";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  static const std::map<std::string, Method> table = {
      {"consistent", Method::consistent}, {"g1", Method::g1},
      {"g2", Method::g2},                 {"g3", Method::g3},
      {"minimax", Method::minimax},       {"alpha", Method::alpha},
      {"regularized", Method::regularized}};
  auto it = table.find(name);
  if (it == table.end()) throw config_error("unknown method: " + name);
  return it->second;
}

bool ExperimentConfig::wants(Method m) const {
  return methods.empty() ||
         std::find(methods.begin(), methods.end(), m) != methods.end();
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path + ": cannot open config file");

  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected `key = value`");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    auto split = [&](auto parse_one) {
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) parse_one(trim(item));
    };

    try {
      if (key == "image_path") cfg.image_path = value;
      else if (key == "image_size") cfg.image_size = std::stoul(value);
      else if (key == "r") cfg.r = std::stoul(value);
      else if (key == "k_values") split([&](const std::string& s) {
          cfg.k_values.push_back(std::stoul(s)); });
      else if (key == "alpha_values") split([&](const std::string& s) {
          cfg.alpha_values.push_back(std::stod(s)); });
      else if (key == "rho_values") split([&](const std::string& s) {
          cfg.rho_values.push_back(std::stod(s)); });
      else if (key == "methods") split([&](const std::string& s) {
          cfg.methods.push_back(method_from_name(s)); });
      else if (key == "noise_variance") cfg.noise_variance = std::stod(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "max_iter") cfg.max_iter = std::stoi(value);
      else if (key == "tol") cfg.tol = std::stod(value);
      else if (key == "emit_images") cfg.emit_images = value == "true" || value == "1";
      else if (key == "output_dir") cfg.output_dir = value;
      else throw config_error("unknown key: " + key);
    } catch (const std::invalid_argument&) {
      throw config_error(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }

  for (double a : cfg.alpha_values)
    if (a < 0.0 || a > 1.0)
      throw config_error(path + ": alpha values must lie in [0, 1]");
  for (double rho : cfg.rho_values)
    if (rho <= 0.0) throw config_error(path + ": rho values must be positive");
  return cfg;
}

void write_csv(const std::vector<ExperimentRecord>& records, std::ostream& out) {
  out << "method,k,k_scale,alpha_or_rho,psnr_db,cg_iterations,wall_time_ms,seed,extra\n";
  for (const auto& rec : records) {
    out << rec.method << ',' << rec.k << ',' << fmt(rec.k_scale) << ','
        << fmt(rec.alpha_or_rho) << ',' << fmt(rec.psnr_db) << ','
        << rec.cg_iterations << ',' << fmt(rec.wall_time_ms) << ',' << rec.seed
        << ',' << rec.extra << '\n';
  }
}

void write_csv_file(const std::vector<ExperimentRecord>& records,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_csv(records, out);
}

Signal load_experiment_image(const ExperimentConfig& cfg) {
  Signal f = cfg.image_path.empty()
                 ? make_synthetic_image(cfg.image_size, cfg.seed)
                 : read_pgm(cfg.image_path);
  if (f.shape().rows != f.shape().cols)
    throw config_error("experiment image must be square");
  if (f.shape().rows % cfg.r != 0)
    throw config_error("experiment image side must be divisible by r");
  for (std::size_t k : cfg.k_values)
    if (k < 1 || k > f.shape().rows)
      throw config_error("k value out of range for this image");
  return f;
}

std::vector<ExperimentRecord> run_experiment1(const ExperimentConfig& cfg) {
  if (cfg.noise_variance != 0.0)
    throw config_error("experiment1 requires noise_variance = 0");
  const Signal f = load_experiment_image(cfg);
  const CgParams params = solver_params(cfg);
  std::vector<ExperimentRecord> records;

  for (std::size_t k : cfg.k_values) {
    const ImageProblem ip = make_image_problem(cfg, f, k);
    ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
    CgStats stats;
    const ReconstructionSet set = make_reconstruction_set(problem, params, &stats);
    const std::string gap_info = "gap=" + fmt(set.gap);

    if (cfg.wants(Method::consistent)) {
      records.push_back({"consistent", k, ip.scale, 1.0, psnr(f, set.f_c),
                         stats.iterations, 0.0, cfg.seed, gap_info});
      maybe_emit(cfg, "exp1_consistent_k" + std::to_string(k), set.f_c);
    }
    if (cfg.wants(Method::g3)) {
      records.push_back({"g3", k, ip.scale, 0.0, psnr(f, set.f_g),
                         stats.iterations, 0.0, cfg.seed, gap_info});
      maybe_emit(cfg, "exp1_g3_k" + std::to_string(k), set.f_g);
    }
    if (cfg.wants(Method::minimax)) {
      const Signal f_m = minimax_regret(ip.T, ip.f_du);
      records.push_back({"minimax", k, ip.scale, 0.0, psnr(f, f_m), 0, 0.0,
                         cfg.seed, gap_info});
      maybe_emit(cfg, "exp1_minimax_k" + std::to_string(k), f_m);
    }
    if (cfg.wants(Method::alpha)) {
      const Signal f_a = set.point(0.7);
      records.push_back({"alpha", k, ip.scale, 0.7, psnr(f, f_a),
                         stats.iterations, 0.0, cfg.seed, gap_info});
      maybe_emit(cfg, "exp1_alpha_k" + std::to_string(k) + "_a" + sanitize(0.7),
                 f_a);
    }
  }

  // Companion alpha sweep at the most oversampled k; one solve serves the
  // whole sweep.
  if (cfg.wants(Method::alpha) && !cfg.alpha_values.empty()) {
    const std::size_t k_star = most_oversampled_k(cfg.k_values);
    const ImageProblem ip = make_image_problem(cfg, f, k_star);
    ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
    CgStats stats;
    const ReconstructionSet set = make_reconstruction_set(problem, params, &stats);
    for (double a : cfg.alpha_values)
      records.push_back({"alpha", k_star, ip.scale, a, psnr(f, set.point(a)),
                         stats.iterations, 0.0, cfg.seed, "gap=" + fmt(set.gap)});
  }

  return records;
}

std::vector<ExperimentRecord> run_experiment2(const ExperimentConfig& cfg) {
  if (cfg.noise_variance <= 0.0)
    throw config_error("experiment2 requires noise_variance > 0");
  const Signal f = load_experiment_image(cfg);
  const CgParams params = solver_params(cfg);
  std::vector<ExperimentRecord> records;

  auto extra_for = [&](const ImageProblem& ip, const ReconstructionSet& set) {
    const AlphaSelection lin =
        alpha_from_noise(ip.noise_norm, set, NoiseRule::linear);
    const AlphaSelection quad =
        alpha_from_noise(ip.noise_norm, set, NoiseRule::quadratic);
    return "noise_norm=" + fmt(ip.noise_norm) + ";gap=" + fmt(set.gap) +
           ";alpha_linear=" + fmt(lin.alpha) + ";alpha_quadratic=" + fmt(quad.alpha);
  };

  // k_scale sweep at alpha = 0.7.
  for (std::size_t k : cfg.k_values) {
    const ImageProblem ip = make_image_problem(cfg, f, k);
    ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
    CgStats stats;
    const ReconstructionSet set = make_reconstruction_set(problem, params, &stats);
    const std::string extra = extra_for(ip, set);

    if (cfg.wants(Method::consistent))
      records.push_back({"consistent", k, ip.scale, 1.0, psnr(f, set.f_c),
                         stats.iterations, 0.0, cfg.seed, extra});
    if (cfg.wants(Method::g3))
      records.push_back({"g3", k, ip.scale, 0.0, psnr(f, set.f_g),
                         stats.iterations, 0.0, cfg.seed, extra});
    if (cfg.wants(Method::minimax))
      records.push_back({"minimax", k, ip.scale, 0.0,
                         psnr(f, minimax_regret(ip.T, ip.f_du)), 0, 0.0, cfg.seed,
                         extra});
    if (cfg.wants(Method::alpha)) {
      const Signal f_a = set.point(0.7);
      records.push_back({"alpha", k, ip.scale, 0.7, psnr(f, f_a),
                         stats.iterations, 0.0, cfg.seed, extra});
      maybe_emit(cfg, "exp2_alpha_k" + std::to_string(k), f_a);
    }
  }

  // Alpha sweep at the most oversampled k.
  const std::size_t k_star = most_oversampled_k(cfg.k_values);
  const ImageProblem ip = make_image_problem(cfg, f, k_star);
  ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
  CgStats stats;
  const ReconstructionSet set = make_reconstruction_set(problem, params, &stats);
  const std::string extra = extra_for(ip, set);
  for (double a : cfg.alpha_values)
    records.push_back({"alpha", k_star, ip.scale, a, psnr(f, set.point(a)),
                       stats.iterations, 0.0, cfg.seed, extra});

  return records;
}

std::vector<ExperimentRecord> run_experiment3(const ExperimentConfig& cfg) {
  if (cfg.rho_values.empty())
    throw config_error("experiment3 requires a nonempty rho_values list");
  const Signal f = load_experiment_image(cfg);
  const CgParams params = solver_params(cfg);
  const std::size_t k = most_oversampled_k(cfg.k_values);
  const ImageProblem ip = make_image_problem(cfg, f, k);
  ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
  std::vector<ExperimentRecord> records;

  // Alpha path: a single consistent solve covers every candidate.
  const std::int64_t before_alpha = cg_invocation_count();
  const double t0 = now_ms();
  CgStats set_stats;
  const ReconstructionSet set = make_reconstruction_set(problem, params, &set_stats);
  const double alpha_path_ms = now_ms() - t0;
  const std::int64_t alpha_solves = cg_invocation_count() - before_alpha;

  // Rho path: one fresh solve per candidate.
  const std::int64_t before_rho = cg_invocation_count();
  struct RhoResult {
    Signal f_rho;
    CgStats stats;
    double ms;
  };
  std::vector<RhoResult> rho_results;
  for (double rho : cfg.rho_values) {
    const double t1 = now_ms();
    auto [f_rho, stats] = regularized_reconstruction(problem, rho, params);
    rho_results.push_back({std::move(f_rho), std::move(stats), now_ms() - t1});
  }
  const std::int64_t rho_solves = cg_invocation_count() - before_rho;

  for (std::size_t i = 0; i < cfg.rho_values.size(); ++i) {
    const double rho = cfg.rho_values[i];
    const double alpha = rho_alpha_convert(rho, AlphaRhoDirection::rho_to_alpha);
    const Signal f_alpha = set.point(alpha);
    const RhoResult& rr = rho_results[i];
    const double dist_rel = norm(f_alpha) > 0.0
                                ? distance(rr.f_rho, f_alpha) / norm(f_alpha)
                                : distance(rr.f_rho, f_alpha);
    const std::string extra = "dist_rel=" + fmt(dist_rel) +
                              ";path_solves=" + std::to_string(rho_solves);
    records.push_back({"regularized", k, ip.scale, rho, psnr(f, rr.f_rho),
                       rr.stats.iterations, rr.ms, cfg.seed, extra});
    records.push_back({"alpha", k, ip.scale, alpha, psnr(f, f_alpha),
                       set_stats.iterations, alpha_path_ms, cfg.seed,
                       "dist_rel=" + fmt(dist_rel) +
                           ";path_solves=" + std::to_string(alpha_solves)});
  }
  return records;
}

std::vector<ExperimentRecord> run_experiment4(const ExperimentConfig& cfg) {
  if (cfg.max_iter < 1 || cfg.max_iter > 16)
    throw config_error("experiment4 expects a small max_iter (1..16)");
  const Signal f = load_experiment_image(cfg);
  const std::size_t k = most_oversampled_k(cfg.k_values);
  const ImageProblem ip = make_image_problem(cfg, f, k);
  ReconstructionProblem problem{ip.S, ip.T, ip.f_du, ip.pair};
  const double alpha = cfg.alpha_values.empty() ? 0.7 : cfg.alpha_values.front();
  std::vector<ExperimentRecord> records;

  for (int maxit = 1; maxit <= cfg.max_iter; ++maxit) {
    const CgParams params{cfg.tol, maxit, std::nullopt};
    auto [f_c, c_stats] = consistent_reconstruction(problem, params);
    auto [f_g1, g1_stats] = generalized_g1(problem, params);
    auto [f_g2, g2_stats] = generalized_g2(problem, params);
    const Signal f_g3 = generalized_g3(problem.T, f_c);

    const double d_g1g2 = distance(f_g1, f_g2);
    const double d_g3g1 = distance(f_g3, f_g1);
    const std::string extra =
        "d_g1g2=" + fmt(d_g1g2) + ";d_g3g1=" + fmt(d_g3g1);

    records.push_back({"g1", k, ip.scale, 0.0, psnr(f, f_g1),
                       g1_stats.iterations, 0.0, cfg.seed, extra});
    records.push_back({"g2", k, ip.scale, 0.0, psnr(f, f_g2),
                       g2_stats.iterations, 0.0, cfg.seed, extra});
    records.push_back({"g3", k, ip.scale, 0.0, psnr(f, f_g3),
                       c_stats.iterations, 0.0, cfg.seed, extra});

    // Combinations built on the g1 and g3 endpoints; the g2-based one is
    // identical to the g1-based one and therefore skipped.
    Signal f_a1 = f_g1;
    f_a1.scale(1.0 - alpha).axpy(alpha, f_c);
    Signal f_a3 = f_g3;
    f_a3.scale(1.0 - alpha).axpy(alpha, f_c);
    records.push_back({"alpha_g1", k, ip.scale, alpha, psnr(f, f_a1),
                       g1_stats.iterations, 0.0, cfg.seed, extra});
    records.push_back({"alpha_g3", k, ip.scale, alpha, psnr(f, f_a3),
                       c_stats.iterations, 0.0, cfg.seed, extra});

    maybe_emit(cfg, "exp4_g1_it" + std::to_string(maxit), f_g1);
    maybe_emit(cfg, "exp4_g3_it" + std::to_string(maxit), f_g3);
  }
  return records;
}

} // namespace gsr
