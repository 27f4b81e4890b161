// robustness.hpp — detuning-error model, fidelity landscapes, window statistics

#pragma once

#include <string>

#include <Eigen/Dense>

#include "opss/models.hpp"
#include "opss/sequence.hpp"

namespace opss {

// Multiplicative fractional errors: the primary frequency (omega_a resp.
// omega_m) is scaled by (1 + eps_primary), every segment control frequency by
// (1 + eps_control). Couplings stay untouched.
struct ErrorSpec {
    double eps_primary = 0.0;
    double eps_control = 0.0;

    void validate() const;  // |eps| <= 0.1 sanity bound
};

enum class ErrorAxis { primary, control };
std::string to_string(ErrorAxis axis);
ErrorAxis error_axis_from_string(const std::string& s);

ErrorSpec on_axis(ErrorAxis axis, double eps);

ThreePhotonParams apply_error(const ThreePhotonParams& p, const ErrorSpec& e);
CasimirParams apply_error(const CasimirParams& p, const ErrorSpec& e);
Model apply_error(const Model& model, const ErrorSpec& e);
double scaled_control(double control, const ErrorSpec& e);

enum class EvalEngine { full_model, effective };

struct GridSpec {
    Eigen::VectorXd eps1;  // primary-frequency errors
    Eigen::VectorXd eps2;  // control-frequency errors

    // n points spanning [-extent, +extent] per axis (odd n puts 0 on the grid).
    static GridSpec symmetric(double extent1, int n1, double extent2, int n2);
};

struct FidelityLandscape {
    Eigen::VectorXd eps1;
    Eigen::VectorXd eps2;
    Eigen::MatrixXd fidelity;  // fidelity(i, j) at (eps1[i], eps2[j])
    std::string model_tag;
    std::string sequence_tag;
};

// Fidelity at every grid point; deterministic, evaluated as a parallel map.
// The map supplies detuning-representation conversion and the effective-mode
// dynamics. Empty grids produce an empty landscape.
FidelityLandscape scan_landscape(const Model& model, const TwoLevelMap& map,
                                 const OpssSequence& seq, const GridSpec& grid,
                                 EvalEngine engine = EvalEngine::full_model,
                                 const std::string& sequence_tag = "");

// Largest r such that every grid point with sqrt(eps1^2+eps2^2) <= r clears
// the threshold: the distance of the nearest failing point, or the grid
// corner distance when nothing fails. 0 when the center fails. Requires 0 on
// both axes.
double high_fidelity_radius(const FidelityLandscape& landscape, double threshold = 0.8);

struct WindowStats {
    double center_eps = 0.0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Samples eps uniformly over [0.9 c, 1.1 c] (mirrored when c < 0, degenerate
// {0} when c = 0) on one error axis and reports mean/min/max fidelity.
WindowStats window_stats(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                         ErrorAxis axis, double center_eps, int n_samples = 101,
                         EvalEngine engine = EvalEngine::full_model);

// Mean fidelity over an explicit 1D error grid on one axis.
double mean_fidelity(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                     ErrorAxis axis, const Eigen::VectorXd& eps_values,
                     EvalEngine engine = EvalEngine::full_model);

} // namespace opss
