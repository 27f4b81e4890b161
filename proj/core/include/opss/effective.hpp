// effective.hpp — closed-form effective two-level models and detuning maps
//
// Conventions, fixed once for the whole workbench:
//  * omega_eff denotes the 2x2 matrix coupling element (signed): negative
//    -9 sqrt(6) lambda^3 / (4 omega_a^2) for the three-photon model, positive
//    +18 sqrt(3) g^3 / omega_m^2 for the Casimir model. The avoided-crossing
//    gap equals 2|omega_eff|.
//  * The Rabi frequency Omega appearing in rabi_probability is the full
//    oscillation frequency, i.e. Omega = 2|omega_eff|. Propagating
//    two_level_hamiltonian(delta, Omega) = [[0, Omega/2], [Omega/2, delta]]
//    reproduces rabi_probability(delta, Omega, t) exactly for all inputs.
//  * delta is the detuning in the (initial, target) gauge with the initial
//    state's diagonal shifted to zero.

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "opss/models.hpp"
#include "opss/spectrum.hpp"

namespace opss {

// Which AC-Stark-shift variant feeds the three-photon detuning map. The main
// text and the appendix of the source derivation disagree on the diagonal;
// both are implemented, main_text is the default. The Casimir model has a
// single variant and ignores this flag.
enum class StarkVariant { main_text, appendix };

// 2x2 interaction matrix in the {|e,0>, |g,3>} basis; excludes the bare
// energies (zero matrix at lambda = 0).
Eigen::Matrix2d effective_three_photon(const ThreePhotonParams& p,
                                       StarkVariant variant = StarkVariant::main_text);

// 2x2 matrix in the {|2,0>, |0,3>} basis; includes the bare energies
// (diag(2 omega_c, 3 omega_m) at g = 0).
Eigen::Matrix2d effective_casimir(const CasimirParams& p);

struct EffectiveTwoLevel {
    double delta = 0.0;      // effective detuning at the given control
    double omega_eff = 0.0;  // signed coupling element
    const char* basis_initial = "";
    const char* basis_target = "";
};

EffectiveTwoLevel effective_two_level(const Model& model, double control_frequency,
                                      StarkVariant variant = StarkVariant::main_text);

// Detuned Rabi transition probability
//     p = Omega^2/(Omega^2 + delta^2) * sin^2(sqrt(Omega^2 + delta^2) t / 2).
// Returns 0 when Omega = delta = 0 (no dynamics). Omega is the Rabi
// frequency (2x the coupling element).
double rabi_probability(double delta, double omega, double t);

// [[0, Omega/2], [Omega/2, delta]]; propagation of this matrix reproduces
// rabi_probability bit-for-bit.
Eigen::Matrix2cd two_level_hamiltonian(double delta, double omega);

// Effective detuning of a control frequency:
//   three-photon: (omega_a - 3 omega_c) + Stark(variant)
//   Casimir:       3 omega_m - 2 omega_c + 21 g^2 / omega_m
// Preconditions: control within +-10% of the bare resonance (RangeError).
double detuning_from_frequency(const Model& model, double control_frequency,
                               StarkVariant variant = StarkVariant::main_text);

// Analytic d(delta)/d(control).
double detuning_slope(const Model& model, double control_frequency,
                      StarkVariant variant = StarkVariant::main_text);

// Inverse map; closed form for Casimir, Newton iteration for three-photon.
// RangeError when the target is unreachable inside the +-10% window.
double frequency_from_detuning(const Model& model, double delta_target,
                               StarkVariant variant = StarkVariant::main_text);

// The effective two-level frame used for cheap propagation and optimization.
//
// The perturbative flavour zeroes delta at the analytic resonance. The
// calibrated flavour locates the full-model avoided crossing once, then
// re-zeroes the detuning map there and takes the Rabi frequency from the
// measured gap; the perturbative expressions keep supplying the (accurate)
// derivatives. Calibration is what makes effective and full trajectories
// agree for the three-photon coupling strengths; for the Casimir model it
// reproduces the perturbative numbers to ~0.1%.
class TwoLevelMap {
public:
    static TwoLevelMap perturbative(const Model& model,
                                    StarkVariant variant = StarkVariant::main_text);
    static TwoLevelMap calibrated(const Model& model,
                                  std::optional<RatioRange> scan = std::nullopt,
                                  StarkVariant variant = StarkVariant::main_text);

    const Model& model() const { return model_; }
    StarkVariant variant() const { return variant_; }
    bool is_calibrated() const { return calibrated_; }

    double coupling() const { return std::abs(signed_coupling_); }  // |omega_eff|
    double signed_coupling() const { return signed_coupling_; }
    double rabi_frequency() const { return 2.0 * coupling(); }
    double resonant_control() const { return resonant_control_; }
    double delta_offset() const { return delta_offset_; }

    // Detuning of a control under the nominal parameters.
    double delta(double control_frequency) const;
    // Detuning under perturbed parameters (the offset stays the nominal one,
    // so systematic frequency errors shift delta exactly as they shift the
    // physical resonance mismatch).
    double delta(const Model& perturbed, double control_frequency) const;
    // Inverse of the nominal map.
    double control_for_delta(double delta_target) const;

private:
    TwoLevelMap(Model model, StarkVariant variant, bool calibrated, double resonant_control,
                double signed_coupling, double delta_offset);

    Model model_;
    StarkVariant variant_;
    bool calibrated_;
    double resonant_control_;
    double signed_coupling_;
    double delta_offset_;
};

} // namespace opss
