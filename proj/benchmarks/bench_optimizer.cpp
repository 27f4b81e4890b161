#include <benchmark/benchmark.h>

#include "opss/optimizer.hpp"

using namespace opss;

static void BM_CandidateEvaluation(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::perturbative(model);
    OpssObjective objective{model, map, SampleSpec{51, -0.01, 0.01}, ErrorAxis::control,
                            CostWeights{}};
    std::vector<double> x(8, 0.0);
    x.back() = 3.0 * std::numbers::pi / map.coupling();
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective(x));
    }
}
BENCHMARK(BM_CandidateEvaluation);

static void BM_DeGeneration(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::perturbative(model);
    OpssObjective objective{model, map, SampleSpec{51, -0.01, 0.01}, ErrorAxis::control,
                            CostWeights{}};
    const ObjectiveFn fn = [&objective](std::span<const double> x) { return objective(x); };
    const Bounds bounds = Bounds::opss_default(map, 7);
    DeConfig config;
    config.population = 40;
    config.max_iterations = 1;
    config.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(de_optimize(fn, bounds, config));
    }
}
BENCHMARK(BM_DeGeneration);
