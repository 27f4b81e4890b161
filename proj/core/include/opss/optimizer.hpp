// optimizer.hpp — composite cost and the DE + gradient-refinement hybrid

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opss/robustness.hpp"
#include "opss/sequence.hpp"

#include "json.hpp"

namespace opss {

struct CostWeights {
    double w_b = 1.0;       // barrier weight
    double w_f = 500.0;     // floor weight
    double w_r = 5.0;       // robustness (flatness) weight
    double f_target = 0.9;  // floor threshold
};

// C = w_b sum log(max(1-F_k, 1e-12))
//   + w_f sum max(0, F_target - F_k)^2
//   + w_r * population standard deviation of {F_k}
double sequence_cost(std::span<const double> fidelities, const CostWeights& w);

struct SampleSpec {
    int m = 51;
    double eps_min = 0.0;
    double eps_max = 0.0;

    Eigen::VectorXd samples() const;  // m uniform points over [eps_min, eps_max]
    void validate() const;
};

struct DeConfig {
    int population = 100;
    int max_iterations = 1500;
    double mutation_factor = 0.7;
    double crossover_rate = 0.9;
    int elite_pool_size = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

struct RefineConfig {
    int max_iterations = 3000;
    double gradient_step = 1e-7;  // central-difference step, relative to box width

    void validate() const;
};

struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;

    // Delta_k in [-50, 50]|omega_eff|, T in [0.5, 12] pi/|omega_eff|.
    static Bounds opss_default(const TwoLevelMap& map, int n_segments);

    std::size_t size() const { return lo.size(); }
    void validate() const;
    double clamp(double x, std::size_t i) const;
};

struct Candidate {
    OpssSequence sequence;  // detuning representation; controls = Delta_1..N, plus total_time
    double cost = 0.0;
    std::vector<double> fidelity_samples;
};

// Cost evaluation context for OPSS parameter vectors x = (Delta_1..Delta_N, T):
// fidelity at each of the M error samples on the configured axis, evaluated on
// the effective model.
struct OpssObjective {
    Model model;
    TwoLevelMap map;
    SampleSpec sample;
    ErrorAxis axis = ErrorAxis::control;
    CostWeights weights;

    double operator()(std::span<const double> x) const;
    Candidate make_candidate(std::span<const double> x) const;
};

Candidate evaluate_candidate(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                             const SampleSpec& sample, ErrorAxis axis, const CostWeights& weights);

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct ScoredVector {
    std::vector<double> x;
    double cost = 0.0;
};

struct DeResult {
    std::vector<ScoredVector> elite;  // sorted by cost ascending
    int generations = 0;
    std::size_t evaluations = 0;
};

// Classic DE (rand/1/bin) with an elite pool maintained across generations.
// Deterministic for a fixed seed regardless of the worker count: all random
// decisions come from per-(generation, candidate) streams and candidate
// evaluations are an order-preserving parallel map.
DeResult de_optimize(const ObjectiveFn& objective, const Bounds& bounds, const DeConfig& config);

struct RefineResult {
    std::vector<double> x;
    double cost = 0.0;
    int iterations = 0;
};

// Bound-constrained quasi-Newton descent (projected L-BFGS with Armijo
// backtracking); gradients by central finite differences. Never returns a
// point worse than the input.
RefineResult refine(const ObjectiveFn& objective, std::span<const double> start,
                    const Bounds& bounds, const RefineConfig& config);

struct HybridResult {
    Candidate best;            // detuning representation
    OpssSequence physical;     // same sequence mapped to physical frequencies
    nlohmann::json manifest;
};

// DE global search, then refinement of every elite-pool member, then pick the
// lowest cost. stage_sink (optional) receives partial results as stages
// complete so interrupted runs leave usable artifacts behind.
HybridResult hybrid_optimize(const OpssObjective& objective, int n_segments,
                             const DeConfig& de_config, const RefineConfig& refine_config,
                             const Bounds* bounds_override = nullptr,
                             const std::function<void(const nlohmann::json&)>& stage_sink = {});

} // namespace opss
