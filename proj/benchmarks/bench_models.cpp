#include <benchmark/benchmark.h>

#include "opss/models.hpp"
#include "opss/spectrum.hpp"

using namespace opss;

static void BM_BuildRabiHamiltonian(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.hamiltonian(0.344));
    }
}
BENCHMARK(BM_BuildRabiHamiltonian);

static void BM_DiagonalizeThreePhoton(benchmark::State& state) {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    const Eigen::MatrixXcd h = model.hamiltonian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagonalize(h));
    }
}
BENCHMARK(BM_DiagonalizeThreePhoton);

static void BM_DiagonalizeCasimir(benchmark::State& state) {
    const Model model = Model::casimir({1.5000105, 1.0, 0.001});
    const Eigen::MatrixXcd h = model.hamiltonian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagonalize(h));
    }
}
BENCHMARK(BM_DiagonalizeCasimir);

BENCHMARK_MAIN();
