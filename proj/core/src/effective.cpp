#include "opss/effective.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "opss/errors.hpp"

namespace opss {

namespace {

constexpr double kWindow = 0.10;  // admissible control window around bare resonance

void check_control_window(const Model& model, double control) {
    const double center = model.bare_resonant_control();
    if (std::abs(control - center) > kWindow * center) {
        throw RangeError("control frequency " + std::to_string(control) +
                         " outside the +-10% window around " + std::to_string(center));
    }
}

double three_photon_stark(const ThreePhotonParams& p, double omega_c, StarkVariant variant) {
    // Difference of the diagonal Stark shifts, initial minus target.
    if (variant == StarkVariant::main_text) {
        return p.lambda * p.lambda / omega_c + 6.0 * p.lambda * p.lambda / p.omega_a;
    }
    return 2.0 * p.lambda * p.lambda / omega_c;
}

// The raw analytic map, no admissible-window check. The window applies to the
// public conversion operations; the TwoLevelMap needs smooth extrapolation a
// little past it (detuning bounds plus a control error can stack up to ~11%).
double detuning_unchecked(const Model& model, double control, StarkVariant variant) {
    if (control <= 0.0) throw RangeError("control frequency must be positive");
    if (model.kind() == ModelKind::three_photon) {
        const auto& p = model.three_photon_params();
        return (p.omega_a - 3.0 * control) + three_photon_stark(p, control, variant);
    }
    const auto& p = model.casimir_params();
    return 3.0 * p.omega_m - 2.0 * control + 21.0 * p.g * p.g / p.omega_m;
}

double frequency_unchecked(const Model& model, double delta_target, StarkVariant variant) {
    if (model.kind() == ModelKind::casimir) {
        const auto& p = model.casimir_params();
        return 0.5 * (3.0 * p.omega_m + 21.0 * p.g * p.g / p.omega_m - delta_target);
    }
    const double ref = model.reference_frequency();
    double control = model.bare_resonant_control();
    for (int it = 0; it < 100; ++it) {
        const double f = detuning_unchecked(model, control, variant) - delta_target;
        if (std::abs(f) <= 1e-13 * ref) break;
        control -= f / detuning_slope(model, control, variant);
    }
    return control;
}

} // namespace

Eigen::Matrix2d effective_three_photon(const ThreePhotonParams& p, StarkVariant variant) {
    const double l2 = p.lambda * p.lambda;
    const double l3 = l2 * p.lambda;
    Eigen::Matrix2d m;
    if (variant == StarkVariant::main_text) {
        const double off = -9.0 * std::sqrt(6.0) * l3 / (4.0 * p.omega_a * p.omega_a);
        m << 1.5 * l2 / p.omega_a, off,
             off, -l2 / p.omega_c - 4.5 * l2 / p.omega_a;
    } else {
        const double off = -std::sqrt(6.0) * l3 / (4.0 * p.omega_c * p.omega_c);
        m << -0.5 * l2 / p.omega_c, off,
             off, -2.5 * l2 / p.omega_c;
    }
    return m;
}

Eigen::Matrix2d effective_casimir(const CasimirParams& p) {
    const double g2 = p.g * p.g;
    const double off = 18.0 * std::sqrt(3.0) * g2 * p.g / (p.omega_m * p.omega_m);
    Eigen::Matrix2d m;
    m << 2.0 * p.omega_c - 27.0 * g2 / p.omega_m, off,
         off, 3.0 * p.omega_m - 6.0 * g2 / p.omega_m;
    return m;
}

EffectiveTwoLevel effective_two_level(const Model& model, double control, StarkVariant variant) {
    EffectiveTwoLevel out;
    out.delta = detuning_from_frequency(model, control, variant);
    if (model.kind() == ModelKind::three_photon) {
        const auto& p = model.three_photon_params();
        if (variant == StarkVariant::main_text) {
            out.omega_eff = -9.0 * std::sqrt(6.0) * std::pow(p.lambda, 3) / (4.0 * p.omega_a * p.omega_a);
        } else {
            out.omega_eff = -std::sqrt(6.0) * std::pow(p.lambda, 3) / (4.0 * control * control);
        }
        out.basis_initial = "e,0";
        out.basis_target = "g,3";
    } else {
        const auto& p = model.casimir_params();
        out.omega_eff = 18.0 * std::sqrt(3.0) * std::pow(p.g, 3) / (p.omega_m * p.omega_m);
        out.basis_initial = "2,0";
        out.basis_target = "0,3";
    }
    return out;
}

double rabi_probability(double delta, double omega, double t) {
    const double w = std::hypot(omega, delta);
    if (w == 0.0) return 0.0;
    const double amplitude = (omega / w) * (omega / w);
    const double s = std::sin(0.5 * w * t);
    return amplitude * s * s;
}

Eigen::Matrix2cd two_level_hamiltonian(double delta, double omega) {
    Eigen::Matrix2cd h;
    h << 0.0, 0.5 * omega,
         0.5 * omega, delta;
    return h;
}

double detuning_from_frequency(const Model& model, double control, StarkVariant variant) {
    check_control_window(model, control);
    return detuning_unchecked(model, control, variant);
}

double detuning_slope(const Model& model, double control, StarkVariant variant) {
    if (model.kind() == ModelKind::three_photon) {
        const auto& p = model.three_photon_params();
        const double l2 = p.lambda * p.lambda;
        const double stark = variant == StarkVariant::main_text ? l2 : 2.0 * l2;
        return -3.0 - stark / (control * control);
    }
    return -2.0;
}

double frequency_from_detuning(const Model& model, double delta_target, StarkVariant variant) {
    const double control = frequency_unchecked(model, delta_target, variant);
    check_control_window(model, control);  // RangeError if unreachable
    const double residual = detuning_unchecked(model, control, variant) - delta_target;
    if (std::abs(residual) > 1e-11 * model.reference_frequency()) {
        throw RangeError("frequency_from_detuning: Newton residual " + std::to_string(residual));
    }
    return control;
}

TwoLevelMap::TwoLevelMap(Model model, StarkVariant variant, bool calibrated,
                         double resonant_control, double signed_coupling, double delta_offset)
    : model_(std::move(model)),
      variant_(variant),
      calibrated_(calibrated),
      resonant_control_(resonant_control),
      signed_coupling_(signed_coupling),
      delta_offset_(delta_offset) {}

TwoLevelMap TwoLevelMap::perturbative(const Model& model, StarkVariant variant) {
    const double control = frequency_from_detuning(model, 0.0, variant);
    const double coupling = effective_two_level(model, control, variant).omega_eff;
    return TwoLevelMap(model, variant, false, control, coupling, 0.0);
}

TwoLevelMap TwoLevelMap::calibrated(const Model& model, std::optional<RatioRange> scan,
                                    StarkVariant variant) {
    const RatioRange range = scan.value_or(default_ratio_range(model.kind()));
    const auto crossing =
        find_avoided_crossing(model, range, default_tracked_pair(model.kind()));
    const double control = crossing.ratio * model.reference_frequency();
    const double sign =
        effective_two_level(model, control, variant).omega_eff < 0.0 ? -1.0 : 1.0;
    const double offset = detuning_from_frequency(model, control, variant);
    return TwoLevelMap(model, variant, true, control, sign * 0.5 * crossing.gap, offset);
}

double TwoLevelMap::delta(double control) const {
    return detuning_unchecked(model_, control, variant_) - delta_offset_;
}

double TwoLevelMap::delta(const Model& perturbed, double control) const {
    return detuning_unchecked(perturbed, control, variant_) - delta_offset_;
}

double TwoLevelMap::control_for_delta(double delta_target) const {
    return frequency_unchecked(model_, delta_target + delta_offset_, variant_);
}

} // namespace opss
