// Acceptance suite: one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gsr/cg.hpp"
#include "gsr/experiment.hpp"
#include "gsr/image_subspaces.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/synthetic.hpp"

#include "oracle.hpp"

using namespace gsr;

namespace {

struct Check {
  std::string name;
  std::function<void()> run; // throws std::runtime_error on failure
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct RandomProblem {
  ReconstructionProblem problem;
  oracle::Matrix P_S, P_T;
  Signal f;
};

RandomProblem random_problem(Rng& rng, std::size_t n, std::size_t dim_s,
                             std::size_t dim_t) {
  auto [P_S, Q_S] = oracle::random_projector(n, dim_s, rng);
  auto [P_T, Q_T] = oracle::random_projector(n, dim_t, rng);
  const Signal f = rng.gaussian_signal(Shape{1, n});
  const Signal f_du = oracle::to_signal(P_S * oracle::to_eigen(f));
  return {{oracle::from_matrix(P_S, "S"), oracle::from_matrix(P_T, "T"), f_du, {}},
          P_S, P_T, f};
}

struct ImageSetup {
  Signal f;
  Signal f_du;
  ReconstructionProblem problem;
};

ImageSetup image_setup(std::size_t w, std::size_t r, std::size_t k,
                       double noise_var, std::uint64_t seed) {
  BlockSamplingScheme sampling(w, r);
  DctGuidingScheme guiding(w, k);
  const Signal f = make_synthetic_image(w, seed);
  Signal f_d = downsample(f, sampling);
  if (noise_var > 0.0) f_d = add_noise(f_d, {noise_var, seed});
  Signal f_du = upsample(f_d, sampling);
  ReconstructionProblem problem{make_sampling_projector(sampling),
                                make_guiding_projector(guiding), f_du,
                                make_guiding_synthesis_pair(guiding)};
  return {f, std::move(f_du), std::move(problem)};
}

const CgParams kTightSmall{1e-12, 500, {}};
const CgParams kTightImage{1e-10, 3000, {}};

void criterion1_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  for (int trial = 0; trial < 50; ++trial) {
    auto rp = random_problem(rng, 20, 8, 5);
    auto [f_c, stats] = consistent_reconstruction(rp.problem, kTightSmall);
    require(stats.converged, "trial " + std::to_string(trial) + ": CG did not converge");
    const oracle::Vector expect = oracle::consistent_oracle(
        rp.P_S, rp.P_T, oracle::to_eigen(rp.problem.f_du));
    const double err = distance(f_c, oracle::to_signal(expect));
    require(err <= 1e-7, "trial " + std::to_string(trial) +
                             ": oracle mismatch " + std::to_string(err));
  }
  const double dt = seconds_since(t0);
  require(dt < 5.0, "runtime " + std::to_string(dt) + " s exceeds 5 s");
}

void criterion2_fig1_triple() {
  const auto geom = oracle::fig1_geometry();
  ReconstructionProblem p{oracle::from_matrix(geom.P_S, "S"),
                          oracle::from_matrix(geom.P_T, "T"),
                          oracle::to_signal(geom.f_du),
                          {}};
  auto [f_c, stats] = consistent_reconstruction(p, kTightSmall);
  const Signal f_g = generalized_g3(p.T, f_c);
  const Signal f_m = minimax_regret(p.T, p.f_du);

  const Signal e_c = Signal::flat({1.0, 2.0, 1.5});
  const Signal e_g = Signal::flat({1.5, 1.5, 1.5});
  const Signal e_m = Signal::flat({1.0, 1.0, 1.0});
  require(distance(f_c, e_c) <= 1e-10, "f_c mismatch");
  require(distance(f_g, e_g) <= 1e-10, "f_g mismatch");
  require(distance(f_m, e_m) <= 1e-10, "f_m mismatch");
}

void criterion3_theorem1() {
  const auto t0 = std::chrono::steady_clock::now();

  // Small random problems.
  Rng rng(1003);
  auto rp = random_problem(rng, 20, 8, 5);
  {
    const ReconstructionSet set = make_reconstruction_set(rp.problem, kTightSmall);
    for (int i = 1; i <= 9; ++i) {
      const double alpha = 0.1 * i;
      const double rho = rho_alpha_convert(alpha, AlphaRhoDirection::alpha_to_rho);
      auto [f_rho, stats] = regularized_reconstruction(rp.problem, rho, kTightSmall);
      require(distance(f_rho, set.point(alpha)) <= 1e-6 * norm(set.f_c),
              "R20 mismatch at alpha " + std::to_string(alpha));
    }
  }

  // 128x128 image, r = 2, k_scale in {0.5, 2, 4} -> k in {128, 32, 16}.
  for (std::size_t k : {std::size_t(128), std::size_t(32), std::size_t(16)}) {
    const ImageSetup s = image_setup(128, 2, k, 0.0, 9001);
    const ReconstructionSet set = make_reconstruction_set(s.problem, kTightImage);
    for (int i = 1; i <= 9; ++i) {
      const double alpha = 0.1 * i;
      const double rho = rho_alpha_convert(alpha, AlphaRhoDirection::alpha_to_rho);
      auto [f_rho, stats] = regularized_reconstruction(s.problem, rho, kTightImage);
      require(distance(f_rho, set.point(alpha)) <= 1e-6 * norm(set.f_c),
              "image k=" + std::to_string(k) + " mismatch at alpha " +
                  std::to_string(alpha));
    }
  }

  const double dt = seconds_since(t0);
  require(dt < 60.0, "runtime " + std::to_string(dt) + " s exceeds 60 s");
}

void criterion4_generalized_equivalence() {
  const ImageSetup s = image_setup(128, 2, 16, 0.0, 9002);
  auto [f_g1, s1] = generalized_g1(s.problem, kTightImage);
  auto [f_g2, s2] = generalized_g2(s.problem, kTightImage);
  auto [f_c, sc] = consistent_reconstruction(s.problem, kTightImage);
  const Signal f_g3 = generalized_g3(s.problem.T, f_c);

  const double scale = norm(f_g1);
  require(distance(f_g1, f_g2) <= 1e-6 * scale, "g1 vs g2");
  require(distance(f_g2, f_g3) <= 1e-6 * scale, "g2 vs g3");
}

void criterion5_noise_free_orderings() {
  // Oversampling: r = 2, k_scale in {2, ~3, 4} (k = 21 is the closest integer
  // band to k_scale 3).
  for (std::size_t k : {std::size_t(32), std::size_t(21), std::size_t(16)}) {
    const ImageSetup s = image_setup(128, 2, k, 0.0, 9003);
    const ReconstructionSet set = make_reconstruction_set(s.problem, kTightImage);
    const Signal f_m = minimax_regret(s.problem.T, s.f_du);
    const double p_c = psnr(s.f, set.f_c);
    const double p_g = psnr(s.f, set.f_g);
    const double p_m = psnr(s.f, f_m);
    require(p_c >= p_g, "k=" + std::to_string(k) + ": consistent < generalized");
    require(p_g >= p_m, "k=" + std::to_string(k) + ": generalized < minimax");
  }

  // Undersampling: r = 4 reaches k_scale 0.5 (k=64) and 0.25 (k=128); with
  // r = 2 the band limit k <= w stops at k_scale 0.5.
  for (std::size_t k : {std::size_t(64), std::size_t(128)}) {
    const ImageSetup s = image_setup(128, 4, k, 0.0, 9003);
    const ReconstructionSet set = make_reconstruction_set(s.problem, kTightImage);
    const double p_c = psnr(s.f, set.f_c);
    const double p_g = psnr(s.f, set.f_g);
    require(std::abs(p_c - p_g) <= 0.01,
            "undersampling k=" + std::to_string(k) + ": |" +
                std::to_string(p_c) + " - " + std::to_string(p_g) + "| > 0.01 dB");
  }
}

void criterion6_error_inequality() {
  Rng rng(1006);
  for (int trial = 0; trial < 50; ++trial) {
    auto rp = random_problem(rng, 20, 8, 5);
    auto [f_c, stats] = consistent_reconstruction(rp.problem, kTightSmall);
    const Signal t_fc = rp.problem.T(f_c);
    require(distance(rp.f, f_c) <= distance(rp.f, t_fc) + 1e-9,
            "trial " + std::to_string(trial));
  }
}

void criterion7_pathway_equality() {
  Rng rng(1007);
  for (int trial = 0; trial < 25; ++trial) {
    auto [P_S, Q_S] = oracle::random_projector(10, 4, rng);
    auto [P_T, Q_T] = oracle::random_projector(10, 3, rng);
    const Signal f = rng.gaussian_signal(Shape{1, 10});
    const oracle::Vector f_du = P_S * oracle::to_eigen(f);

    ReconstructionProblem p{oracle::from_matrix(P_S, "S"),
                            oracle::from_matrix(P_T, "T"),
                            oracle::to_signal(f_du),
                            {}};
    auto [f_c, stats] = consistent_reconstruction(p, kTightSmall);
    const double v_impl = norm(complement_apply(p.T, f_c));

    const oracle::Matrix I = oracle::Matrix::Identity(10, 10);
    const oracle::Vector g = oracle::consistent_oracle(P_S, P_T, f_du);
    const double v1 = ((I - P_T) * g).norm();

    const oracle::Matrix Q_Sp = oracle::complement_basis(P_S);
    oracle::Matrix J(10, Q_Sp.cols() + Q_T.cols());
    J.leftCols(Q_Sp.cols()) = Q_Sp;
    J.rightCols(Q_T.cols()) = -Q_T;
    const double v2 = (f_du + J * (oracle::pinv(J) * (-f_du))).norm();

    const oracle::Matrix M = P_S * Q_T;
    const double v3 = (M * (oracle::pinv(M) * f_du) - f_du).norm();

    require(std::abs(v1 - v2) <= 1e-8, "v1 vs v2, trial " + std::to_string(trial));
    require(std::abs(v2 - v3) <= 1e-8, "v2 vs v3, trial " + std::to_string(trial));
    require(std::abs(v_impl - v1) <= 1e-8,
            "implementation vs oracle, trial " + std::to_string(trial));
  }
}

void criterion8_cg_minimum_norm() {
  Rng rng(1008);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::Matrix M(5, 3);
    for (Eigen::Index i = 0; i < M.rows(); ++i)
      for (Eigen::Index j = 0; j < M.cols(); ++j) M(i, j) = rng.gaussian();
    const oracle::Matrix A = M * M.transpose();
    oracle::Vector z(5);
    for (Eigen::Index i = 0; i < 5; ++i) z[i] = rng.gaussian();
    const oracle::Vector b = A * z;

    const auto res =
        cg_solve(oracle::from_matrix(A, "A"), oracle::to_signal(b), kTightSmall);
    const oracle::Vector expect = oracle::pinv_solve(A, b);
    require(distance(res.x, oracle::to_signal(expect)) <= 1e-6,
            "trial " + std::to_string(trial));
  }
}

void criterion9_cost_asymmetry() {
  ExperimentConfig cfg;
  cfg.image_size = 64;
  cfg.r = 2;
  cfg.k_values = {8};
  cfg.noise_variance = 0.001;
  cfg.seed = 11;
  cfg.max_iter = 400;
  cfg.tol = 1e-10;
  cfg.rho_values.clear();
  for (int i = 1; i <= 9; ++i)
    cfg.rho_values.push_back(
        rho_alpha_convert(0.1 * i, AlphaRhoDirection::alpha_to_rho));

  const auto before = cg_invocation_count();
  const auto records = run_experiment3(cfg);
  const auto delta = cg_invocation_count() - before;
  require(delta == 10, "expected 10 total solves (1 + 9), saw " +
                           std::to_string(delta));

  for (const auto& rec : records) {
    const std::string key = "path_solves=";
    const auto pos = rec.extra.find(key);
    require(pos != std::string::npos, "missing path_solves");
    const int solves = std::stoi(rec.extra.substr(pos + key.size()));
    if (rec.method == "alpha")
      require(solves == 1, "alpha path used " + std::to_string(solves));
    else
      require(solves == 9, "rho path used " + std::to_string(solves));
  }
}

void criterion10_truncation_behavior() {
  ExperimentConfig cfg;
  cfg.image_size = 128;
  cfg.r = 2;
  cfg.k_values = {16};
  cfg.noise_variance = 0.001;
  cfg.seed = 77;
  cfg.max_iter = 2;
  cfg.tol = 1e-14;

  const auto records = run_experiment4(cfg);
  double d1 = -1, d2 = -1;
  for (const auto& rec : records) {
    if (rec.method != "g1") continue;
    const std::string key = "d_g3g1=";
    const auto pos = rec.extra.find(key);
    require(pos != std::string::npos, "missing d_g3g1");
    const double d = std::stod(rec.extra.substr(pos + key.size()));
    if (rec.cg_iterations == 1) d1 = d;
    if (rec.cg_iterations == 2) d2 = d;
  }
  require(d1 > 0 && d2 > 0, "missing records");
  require(d2 < d1, "distance did not decrease: " + std::to_string(d1) + " -> " +
                       std::to_string(d2));
}

void criterion11_projector_certification() {
  struct Case {
    std::size_t w, r, k;
  };
  for (const Case& c : {Case{64, 2, 8}, Case{64, 4, 32}, Case{128, 2, 16}}) {
    const auto S = make_sampling_projector(BlockSamplingScheme(c.w, c.r));
    const auto T = make_guiding_projector(DctGuidingScheme(c.w, c.k));
    for (const auto* op : {&S, &T}) {
      const auto rep = verify_projector(*op, 10, 2024);
      require(rep.max_idempotency_residual <= 1e-10,
              op->label() + " idempotency at w=" + std::to_string(c.w));
      require(rep.max_self_adjoint_residual <= 1e-10,
              op->label() + " self-adjointness at w=" + std::to_string(c.w));
    }

    Rng rng(c.w + c.r + c.k);
    const Signal f = rng.gaussian_signal(Shape{c.w, c.w});
    require(distance(idct2(dct2(f)), f) <= 1e-10 * norm(f), "DCT round trip");
    require(std::abs(norm(dct2(f)) - norm(f)) <= 1e-10 * norm(f), "Parseval");
  }
}

void criterion12_determinism() {
  ExperimentConfig cfg;
  cfg.image_size = 64;
  cfg.r = 2;
  cfg.k_values = {8, 16};
  cfg.alpha_values = {0.0, 0.5, 1.0};
  cfg.noise_variance = 0.001;
  cfg.seed = 123;
  cfg.max_iter = 200;
  cfg.tol = 1e-9;

  std::ostringstream a, b;
  write_csv(run_experiment2(cfg), a);
  write_csv(run_experiment2(cfg), b);
  require(a.str() == b.str(), "CSV outputs differ between runs");
}

} // namespace

int main() {
  const std::vector<Check> checks = {
      {"1 oracle equivalence (R20, 50 problems, < 5 s)", criterion1_oracle_equivalence},
      {"2 Fig.-1 triple (f_c, f_g, f_m)", criterion2_fig1_triple},
      {"3 Theorem 1 (rho vs alpha path, R20 + 128x128)", criterion3_theorem1},
      {"4 generalized equivalence (g1 = g2 = g3 at convergence)",
       criterion4_generalized_equivalence},
      {"5 noise-free PSNR orderings", criterion5_noise_free_orderings},
      {"6 error inequality ||f - f_c|| <= ||f - T f_c||", criterion6_error_inequality},
      {"7 pathway equality (three minima agree)", criterion7_pathway_equality},
      {"8 CG minimum-norm vs SVD pseudoinverse", criterion8_cg_minimum_norm},
      {"9 experiment-3 cost asymmetry (1 vs 9 solves)", criterion9_cost_asymmetry},
      {"10 experiment-4 truncation distance decrease", criterion10_truncation_behavior},
      {"11 projector certification + DCT identities", criterion11_projector_certification},
      {"12 experiment-2 CSV determinism", criterion12_determinism},
  };

  int failures = 0;
  for (const Check& check : checks) {
    try {
      check.run();
      std::printf("PASS criterion %s\n", check.name.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %s: %s\n", check.name.c_str(), e.what());
    }
    std::fflush(stdout);
  }

  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", checks.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
