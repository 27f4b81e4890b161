// models.hpp — the two physical models and their truncated Hamiltonians
//
// Three-photon Rabi model (basis order qubit (x) cavity, qubit index 0 = g,
// 1 = e, flat index q*cavity_dim + n):
//     H = (omega_a/2) sigma_z (x) I + omega_c I (x) a^dag a
//         + lambda sigma_x (x) (a + a^dag)
//
// Casimir-Rabi optomechanical model (basis order cavity (x) mechanics, flat
// index n_c*second_dim + n_m):
//     H = omega_c a^dag a (x) I + omega_m I (x) b^dag b
//         + g (a + a^dag)^2 (x) (b + b^dag)

#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace opss {

struct FockTruncation {
    int cavity_dim = 0;  // photon states 0 .. cavity_dim-1
    int second_dim = 0;  // 2 for the qubit, phonon cutoff for the Casimir model
};

struct ThreePhotonParams {
    double omega_a = 1.0;        // qubit frequency, used as the unit
    double omega_c = 1.0 / 3.0;  // nominal cavity frequency
    double lambda = 0.06;        // coupling strength
};

struct CasimirParams {
    double omega_c = 1.5;   // nominal cavity frequency
    double omega_m = 1.0;   // mechanical frequency, used as the unit
    double g = 0.001;       // nonlinear coupling strength
};

enum class ModelKind { three_photon, casimir };

Eigen::MatrixXcd build_rabi_hamiltonian(const ThreePhotonParams& p, const FockTruncation& t);
Eigen::MatrixXcd build_optomech_hamiltonian(const CasimirParams& p, const FockTruncation& t);

// Bundles kind + parameters + truncation. The control knob passed around the
// workbench is always the cavity frequency omega_c; hamiltonian(control)
// rebuilds the model with that value in place of the nominal one.
class Model {
public:
    static Model three_photon(ThreePhotonParams p = {}, FockTruncation t = {15, 2});
    static Model casimir(CasimirParams p = {}, FockTruncation t = {8, 12});

    ModelKind kind() const { return kind_; }
    const FockTruncation& truncation() const { return truncation_; }
    int dim() const { return truncation_.cavity_dim * truncation_.second_dim; }

    // omega_a for the three-photon model, omega_m for Casimir (the unit).
    double reference_frequency() const;
    // Nominal cavity frequency from the parameter block.
    double nominal_control() const;
    // Bare resonance value of the control: omega_a/3 resp. 1.5 omega_m.
    double bare_resonant_control() const;
    double coupling() const;  // lambda resp. g

    const ThreePhotonParams& three_photon_params() const;
    const CasimirParams& casimir_params() const;

    Eigen::MatrixXcd hamiltonian(double control_frequency) const;
    Eigen::MatrixXcd hamiltonian() const { return hamiltonian(nominal_control()); }

    // Flat index of a bare state: (qubit, photons) resp. (photons, phonons).
    int index_of(int first, int second) const;
    // |e,0> resp. |2,0>.
    int default_initial() const;
    // |g,3> resp. |0,3>.
    int default_target() const;
    std::string state_label(int index) const;

    // Coupling quadratures embedded in the full space; these feed the dressed
    // jump operators: X1 is built from photon_quadrature for both models, X2
    // from sigma_x resp. (b + b^dag).
    Eigen::MatrixXcd photon_quadrature() const;
    Eigen::MatrixXcd second_quadrature() const;

    // Returns a copy with a different truncation (convergence checks).
    Model with_truncation(FockTruncation t) const;
    // Returns a copy with the primary frequency scaled by (1 + eps).
    Model with_primary_scaled(double factor) const;

    std::string tag() const;

    // Regime warnings (coupling beyond the weak-coupling threshold).
    std::vector<std::string> parameter_warnings() const;

private:
    Model(ModelKind kind, std::variant<ThreePhotonParams, CasimirParams> params, FockTruncation t);
    void validate() const;

    ModelKind kind_;
    std::variant<ThreePhotonParams, CasimirParams> params_;
    FockTruncation truncation_;
};

} // namespace opss
