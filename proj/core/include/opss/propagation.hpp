// propagation.hpp — exact piecewise-constant unitary evolution and fidelities

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "opss/robustness.hpp"
#include "opss/sequence.hpp"

namespace opss {

// U = V exp(-i Lambda tau) V^dag from the eigendecomposition of H (exact for
// constant H). ContractError on non-Hermitian input.
Eigen::MatrixXcd segment_propagator(const Eigen::MatrixXcd& h, double tau);

struct TrajectorySpec {
    int samples = 0;                 // 0 disables trajectory recording
    std::vector<int> tracked;        // bare-state indices; empty -> initial+target
};

struct EvolutionResult {
    Eigen::VectorXcd final_state;
    double fidelity = 0.0;           // population of the target bare state at T
    std::vector<double> times;
    Eigen::MatrixXd populations;     // populations(sample, tracked-state)
    std::vector<int> tracked;
};

// Full-model evolution of a physical-representation sequence from one bare
// state towards another, with the detuning-error model applied. Passing a
// detuning-representation sequence is a RepresentationError: convert with
// to_physical first.
EvolutionResult evolve_sequence(const Model& model, const OpssSequence& seq, int initial,
                                int target, const ErrorSpec& error = {},
                                const TrajectorySpec& trajectory = {});

// Closed-form two-level propagation: per segment H = [[0, omega/2],
// [omega/2, delta_k]] for duration T/N. Returns the final state.
Eigen::Vector2cd evolve_two_level_state(std::span<const double> deltas, double rabi_frequency,
                                        double total_time,
                                        Eigen::Vector2cd start = Eigen::Vector2cd(1.0, 0.0));

// Effective-model counterpart of evolve_sequence: controls are mapped to
// per-segment detunings under the perturbed parameters, then propagated on
// the gauge-fixed 2x2 Hamiltonian. Accepts either representation.
EvolutionResult evolve_effective(const Model& model, const TwoLevelMap& map,
                                 const OpssSequence& seq, const ErrorSpec& error = {},
                                 const TrajectorySpec& trajectory = {});

struct TransferPoint {
    double time = 0.0;
    double fidelity = 0.0;
};

// First maximum of the target-state population for a constant control,
// located by a dense scan around t_hint (default pi / measured Rabi
// frequency) plus local refinement.
TransferPoint first_population_maximum(const Model& model, double control, int initial,
                                       int target, double t_hint);

// Convenience: the N=1 baseline sequence at the map's resonant control with
// T = first full-model population maximum.
OpssSequence baseline_sequence(const Model& model, const TwoLevelMap& map);

} // namespace opss
