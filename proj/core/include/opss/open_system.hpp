// open_system.hpp — dressed-state Lindblad master equation and output photon flux

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "opss/propagation.hpp"
#include "opss/spectrum.hpp"

namespace opss {

struct DissipationConfig {
    double kappa = 0.0;  // photon decay rate
    double gamma = 0.0;  // qubit relaxation (three-photon) / phonon decay (Casimir)

    void validate() const;
};

// Jump operators built from strictly energy-decreasing transitions between
// the eigenstates of a (segment-constant) Hamiltonian:
//   X = sum_{E_n > E_m} <psi_m|Q|psi_n> |psi_m><psi_n|
// with Q = (a + a^dag) for X1 and sigma_x resp. (b + b^dag) for X2.
struct JumpOperators {
    Eigen::MatrixXcd x1;       // lab frame
    Eigen::MatrixXcd x2;       // lab frame
    Eigensystem basis;         // eigenbasis snapshot the operators were built in
    int excluded_pairs = 0;    // degenerate pairs dropped (both directions)
};

JumpOperators dressed_jump_operators(const Model& model, const Eigen::MatrixXcd& h,
                                     double degeneracy_tol_scale = 1e-9);

// d(rho)/dt = -i[H, rho] + kappa D[X1] rho + gamma D[X2] rho with
// D[O] rho = O rho O^dag - (O^dag O rho + rho O^dag O)/2.
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& h,
                              const JumpOperators& ops, const DissipationConfig& d);

struct MasterEqOptions {
    int n_samples = 201;              // output sample count over [0, T]
    int steps_per_fast_period = 50;   // RK4 substeps per 2 pi / (eigenvalue spread)
    double trace_tol = 1e-5;          // drift beyond this raises NumericalError
    bool track_positivity = true;     // monitor min eigenvalue at sample times
    std::vector<int> tracked_states;  // bare populations to record; empty -> initial+target
};

struct FluxTrace {
    std::vector<double> times;
    std::vector<double> flux;        // kappa Tr[rho X1^dag X1]
    Eigen::MatrixXd populations;     // populations(sample, tracked-state)
    std::vector<int> tracked;
    double total_time = 0.0;
    double final_trace_defect = 0.0; // |Tr rho - 1| at T
    double min_eigenvalue = 0.0;     // most negative eigenvalue seen at samples
    double max_hermiticity_defect = 0.0;
    Eigen::MatrixXcd final_rho;
};

// Fixed-step RK4 on the Lindblad equation, segment by segment: the
// Hamiltonian and jump operators are rebuilt once per segment (instantaneous
// eigenstates are piecewise-constant). The error model matches
// evolve_sequence. Step h = min(tau_segment, 2 pi / spread) / steps_per_fast_period.
FluxTrace integrate_master_equation(const Model& model, const OpssSequence& seq,
                                    const DissipationConfig& d, int initial,
                                    const ErrorSpec& error = {},
                                    const MasterEqOptions& options = {});

struct FluxLandscape {
    std::vector<double> t_over_t_total;  // normalized time axis
    std::vector<double> eps;
    Eigen::MatrixXd flux;  // flux(time-sample, eps-index)
    std::string axis;
};

// One master-equation integration per error value (parallel map over eps).
FluxLandscape flux_landscape(const Model& model, const OpssSequence& seq,
                             const DissipationConfig& d, ErrorAxis axis,
                             const std::vector<double>& eps_values,
                             const MasterEqOptions& options = {});

} // namespace opss
