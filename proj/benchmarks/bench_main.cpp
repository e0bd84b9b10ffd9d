#include <benchmark/benchmark.h>

#include "gsr/cg.hpp"
#include "gsr/image_subspaces.hpp"
#include "gsr/reconstruction.hpp"
#include "gsr/synthetic.hpp"

namespace {

gsr::ReconstructionProblem make_problem(std::size_t w, std::size_t r,
                                        std::size_t k) {
  gsr::BlockSamplingScheme sampling(w, r);
  gsr::DctGuidingScheme guiding(w, k);
  const gsr::Signal f = gsr::make_synthetic_image(w, 3);
  gsr::Signal f_du = gsr::upsample(gsr::downsample(f, sampling), sampling);
  return {gsr::make_sampling_projector(sampling),
          gsr::make_guiding_projector(guiding), std::move(f_du),
          gsr::make_guiding_synthesis_pair(guiding)};
}

void BM_Dct2(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const gsr::Signal f = gsr::make_synthetic_image(w, 1);
  for (auto _ : state) benchmark::DoNotOptimize(gsr::dct2(f));
}
BENCHMARK(BM_Dct2)->Arg(64)->Arg(128)->Arg(256);

void BM_SamplingProjector(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto S = gsr::make_sampling_projector(gsr::BlockSamplingScheme(w, 2));
  const gsr::Signal f = gsr::make_synthetic_image(w, 1);
  for (auto _ : state) benchmark::DoNotOptimize(S(f));
}
BENCHMARK(BM_SamplingProjector)->Arg(64)->Arg(128)->Arg(256);

void BM_ConsistentReconstruction(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(w, 2, w / 8);
  const gsr::CgParams params{1e-8, 200, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(gsr::consistent_reconstruction(problem, params));
}
BENCHMARK(BM_ConsistentReconstruction)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_RegularizedReconstruction(benchmark::State& state) {
  const auto w = static_cast<std::size_t>(state.range(0));
  const auto problem = make_problem(w, 2, w / 8);
  const gsr::CgParams params{1e-8, 200, {}};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        gsr::regularized_reconstruction(problem, 3.0 / 7.0, params));
}
BENCHMARK(BM_RegularizedReconstruction)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
