#include <benchmark/benchmark.h>

#include "opss/open_system.hpp"
#include "opss/propagation.hpp"

using namespace opss;

static void BM_EvolveSequenceFullModel(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    const int n = static_cast<int>(state.range(0));
    const std::vector<double> controls(static_cast<std::size_t>(n), 0.344);
    const OpssSequence seq = OpssSequence::physical(controls, 1390.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve_sequence(model, seq, model.default_initial(), model.default_target()));
    }
}
BENCHMARK(BM_EvolveSequenceFullModel)->Arg(1)->Arg(7);

static void BM_EvolveTwoLevel(benchmark::State& state) {
    const std::vector<double> deltas(7, 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_two_level_state(deltas, 2.3e-3, 9440.0));
    }
}
BENCHMARK(BM_EvolveTwoLevel);

static void BM_LindbladRk4Step(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    const OpssSequence seq = OpssSequence::physical({0.344}, 2.0);
    MasterEqOptions options;
    options.n_samples = 2;
    options.track_positivity = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_master_equation(model, seq, {6e-5, 6e-5},
                                                           model.default_initial(), {}, options));
    }
}
BENCHMARK(BM_LindbladRk4Step);
