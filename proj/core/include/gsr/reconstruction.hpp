#pragma once

#include <optional>
#include <utility>

#include "gsr/cg.hpp"
#include "gsr/linear_operator.hpp"
#include "gsr/signal.hpp"

namespace gsr {

/// Analysis/synthesis factorization of the guiding projector:
/// synthesis(analysis(x)) = T(x). The coefficient space is embedded in the
/// ambient dimension; analysis(synthesis(.)) is the projector onto the
/// coefficient support.
struct SynthesisPair {
  LinearOperator analysis;
  LinearOperator synthesis;
};

/// One reconstruction instance: sampling projector S, guiding projector T and
/// the measured projection f_du = S f (possibly noisy).
struct ReconstructionProblem {
  LinearOperator S;
  LinearOperator T;
  Signal f_du;
  std::optional<SynthesisPair> guiding_pair;
};

/// The segment between the consistent endpoint f_c and the generalized
/// endpoint f_g = T f_c; every convex combination on it is a valid
/// reconstruction.
struct ReconstructionSet {
  Signal f_c;
  Signal f_g;
  double gap = 0.0; // ||f_c - f_g||

  /// alpha * f_c + (1 - alpha) * f_g, alpha in [0, 1].
  Signal point(double alpha) const;
};

Signal alpha_combine(const ReconstructionSet& set, double alpha);

/// Sample-consistent reconstruction: the element of the plane f_du + S_perp
/// minimizing the energy outside T, minimum-norm tie-break. Solved as
/// S_perp T_perp x = -S_perp T_perp f_du on S_perp by CG; f_c = x + f_du.
std::pair<Signal, CgStats> consistent_reconstruction(
    const ReconstructionProblem& p, const CgParams& cg);

/// Generalized reconstruction via the coefficient-space system
/// analysis(S(synthesis(y))) = analysis(f_du); result synthesis(y).
std::pair<Signal, CgStats> generalized_g1(const ReconstructionProblem& p,
                                          const CgParams& cg);

/// Generalized reconstruction via the ambient system T S T x = T f_du
/// restricted to range(T).
std::pair<Signal, CgStats> generalized_g2(const ReconstructionProblem& p,
                                          const CgParams& cg);

/// Generalized reconstruction from an available consistent one: T f_c.
Signal generalized_g3(const LinearOperator& T, const Signal& f_c);

/// Minimax-regret reconstruction T f_du.
Signal minimax_regret(const LinearOperator& T, const Signal& f_du);

/// Regularized reconstruction: solves (S + rho * T_perp) f = f_du on the full
/// space, rho > 0. At convergence equals alpha_combine with alpha = 1/(1+rho).
std::pair<Signal, CgStats> regularized_reconstruction(
    const ReconstructionProblem& p, double rho, const CgParams& cg);

enum class AlphaRhoDirection { alpha_to_rho, rho_to_alpha };

/// rho = (1 - alpha)/alpha  /  alpha = 1/(1 + rho).
double rho_alpha_convert(double value, AlphaRhoDirection direction);

enum class NoiseRule { linear, quadratic };

struct AlphaSelection {
  double alpha = 1.0;
  bool degenerate = false; // gap was zero with positive noise energy
};

/// Noise-driven combination weight. linear: 1 - alpha = ||e|| / gap;
/// quadratic: 1 - alpha = ||e||^2 / gap^2. Clamped to [0, 1].
AlphaSelection alpha_from_noise(double noise_energy,
                                const ReconstructionSet& set, NoiseRule rule);

/// Runs the consistent solve and derives the generalized endpoint T f_c.
ReconstructionSet make_reconstruction_set(const ReconstructionProblem& p,
                                          const CgParams& cg,
                                          CgStats* stats_out = nullptr);

/// Checks the problem invariants (S, T are orthogonal projectors; f_du lies
/// in the sampling subspace). Throws config_error on violation.
void validate_problem(const ReconstructionProblem& p, std::uint64_t seed = 7,
                      int probes = 8, double tol = 1e-8);

} // namespace gsr
