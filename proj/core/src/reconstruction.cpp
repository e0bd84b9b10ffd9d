#include "gsr/reconstruction.hpp"

#include <cmath>
#include <string>

namespace gsr {

Signal ReconstructionSet::point(double alpha) const {
  if (alpha < 0.0 || alpha > 1.0)
    throw config_error("alpha_combine: alpha must be in [0, 1], got " +
                       std::to_string(alpha));
  Signal out = f_g;
  out.scale(1.0 - alpha).axpy(alpha, f_c);
  return out;
}

Signal alpha_combine(const ReconstructionSet& set, double alpha) {
  return set.point(alpha);
}

std::pair<Signal, CgStats> consistent_reconstruction(
    const ReconstructionProblem& p, const CgParams& cg) {
  const LinearOperator s_perp = complement(p.S);
  const LinearOperator t_perp = complement(p.T);
  const LinearOperator A = compose(s_perp, t_perp);

  Signal b = A(p.f_du);
  b.scale(-1.0);

  CgParams params = cg;
  params.domain_projector = s_perp;
  CgResult res = cg_solve(A, b, params);

  Signal f_c = res.x + p.f_du;
  return {std::move(f_c), std::move(res.stats)};
}

std::pair<Signal, CgStats> generalized_g1(const ReconstructionProblem& p,
                                          const CgParams& cg) {
  if (!p.guiding_pair)
    throw config_error("generalized_g1: problem has no analysis/synthesis pair");
  const LinearOperator& analysis = p.guiding_pair->analysis;
  const LinearOperator& synthesis = p.guiding_pair->synthesis;

  const LinearOperator A(
      [&analysis, &synthesis, S = p.S](const Signal& y) {
        return analysis(S(synthesis(y)));
      },
      analysis.dim(), "Bt*SBt");

  CgParams params = cg;
  // Coefficient support projector keeps iterates in the coefficient space.
  params.domain_projector = compose(analysis, synthesis);
  CgResult res = cg_solve(A, analysis(p.f_du), params);

  return {synthesis(res.x), std::move(res.stats)};
}

std::pair<Signal, CgStats> generalized_g2(const ReconstructionProblem& p,
                                          const CgParams& cg) {
  const LinearOperator A(
      [T = p.T, S = p.S](const Signal& x) { return T(S(T(x))); }, p.T.dim(),
      "TST");

  CgParams params = cg;
  params.domain_projector = p.T;
  CgResult res = cg_solve(A, p.T(p.f_du), params);

  return {std::move(res.x), std::move(res.stats)};
}

Signal generalized_g3(const LinearOperator& T, const Signal& f_c) {
  return T(f_c);
}

Signal minimax_regret(const LinearOperator& T, const Signal& f_du) {
  return T(f_du);
}

std::pair<Signal, CgStats> regularized_reconstruction(
    const ReconstructionProblem& p, double rho, const CgParams& cg) {
  if (rho <= 0.0)
    throw config_error("regularized_reconstruction: rho must be positive, got " +
                       std::to_string(rho));

  const LinearOperator A(
      [S = p.S, T = p.T, rho](const Signal& x) {
        Signal out = S(x);
        out.axpy(rho, x);
        out.axpy(-rho, T(x));
        return out;
      },
      p.S.dim(), "S+rhoTperp");

  CgResult res = cg_solve(A, p.f_du, cg);
  return {std::move(res.x), std::move(res.stats)};
}

double rho_alpha_convert(double value, AlphaRhoDirection direction) {
  if (direction == AlphaRhoDirection::alpha_to_rho) {
    if (value <= 0.0 || value > 1.0)
      throw config_error("rho_alpha_convert: alpha must be in (0, 1]");
    return (1.0 - value) / value;
  }
  if (value < 0.0) throw config_error("rho_alpha_convert: rho must be >= 0");
  return 1.0 / (1.0 + value);
}

AlphaSelection alpha_from_noise(double noise_energy,
                                const ReconstructionSet& set, NoiseRule rule) {
  if (noise_energy < 0.0)
    throw config_error("alpha_from_noise: noise energy must be >= 0");
  if (noise_energy == 0.0) return {1.0, false};
  if (set.gap == 0.0) return {0.0, true};

  const double ratio = noise_energy / set.gap;
  const double one_minus_alpha = rule == NoiseRule::linear ? ratio : ratio * ratio;
  double alpha = 1.0 - one_minus_alpha;
  if (alpha < 0.0) alpha = 0.0;
  if (alpha > 1.0) alpha = 1.0;
  return {alpha, false};
}

ReconstructionSet make_reconstruction_set(const ReconstructionProblem& p,
                                          const CgParams& cg,
                                          CgStats* stats_out) {
  auto [f_c, stats] = consistent_reconstruction(p, cg);
  Signal f_g = generalized_g3(p.T, f_c);
  const double gap = distance(f_c, f_g);
  if (stats_out) *stats_out = std::move(stats);
  return {std::move(f_c), std::move(f_g), gap};
}

void validate_problem(const ReconstructionProblem& p, std::uint64_t seed,
                      int probes, double tol) {
  if (p.S.dim() != p.T.dim() || p.f_du.size() != p.S.dim())
    throw dimension_error("ReconstructionProblem: S, T and f_du dimensions differ");
  for (const LinearOperator* op : {&p.S, &p.T}) {
    const ProjectorReport rep = verify_projector(*op, probes, seed);
    if (rep.max_idempotency_residual > tol || rep.max_self_adjoint_residual > tol)
      throw config_error("ReconstructionProblem: " + op->label() +
                         " fails the orthogonal-projector check");
  }
  const double n = norm(p.f_du);
  if (n > 0.0 && distance(p.S(p.f_du), p.f_du) > tol * n)
    throw config_error("ReconstructionProblem: f_du does not lie in the sampling subspace");
}

} // namespace gsr
