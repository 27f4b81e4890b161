#include "opss/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "opss/errors.hpp"
#include "opss/parallel.hpp"
#include "opss/propagation.hpp"

namespace opss {

void ErrorSpec::validate() const {
    if (std::abs(eps_primary) > 0.1 || std::abs(eps_control) > 0.1) {
        throw std::invalid_argument("fractional error beyond the |eps| <= 0.1 sanity bound");
    }
}

std::string to_string(ErrorAxis axis) {
    return axis == ErrorAxis::primary ? "primary" : "control";
}

ErrorAxis error_axis_from_string(const std::string& s) {
    if (s == "primary") return ErrorAxis::primary;
    if (s == "control") return ErrorAxis::control;
    throw std::invalid_argument("unknown error axis '" + s + "'");
}

ErrorSpec on_axis(ErrorAxis axis, double eps) {
    return axis == ErrorAxis::primary ? ErrorSpec{eps, 0.0} : ErrorSpec{0.0, eps};
}

ThreePhotonParams apply_error(const ThreePhotonParams& p, const ErrorSpec& e) {
    ThreePhotonParams out = p;
    out.omega_a *= 1.0 + e.eps_primary;
    return out;
}

CasimirParams apply_error(const CasimirParams& p, const ErrorSpec& e) {
    CasimirParams out = p;
    out.omega_m *= 1.0 + e.eps_primary;
    return out;
}

Model apply_error(const Model& model, const ErrorSpec& e) {
    return model.with_primary_scaled(1.0 + e.eps_primary);
}

double scaled_control(double control, const ErrorSpec& e) {
    return control * (1.0 + e.eps_control);
}

GridSpec GridSpec::symmetric(double extent1, int n1, double extent2, int n2) {
    GridSpec grid;
    grid.eps1 = n1 > 0 ? Eigen::VectorXd::LinSpaced(n1, -extent1, extent1) : Eigen::VectorXd();
    grid.eps2 = n2 > 0 ? Eigen::VectorXd::LinSpaced(n2, -extent2, extent2) : Eigen::VectorXd();
    if (n1 == 1) grid.eps1[0] = 0.0;
    if (n2 == 1) grid.eps2[0] = 0.0;
    return grid;
}

namespace {

double evaluate_fidelity(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                         const ErrorSpec& error, EvalEngine engine) {
    if (engine == EvalEngine::effective) {
        return evolve_effective(model, map, seq, error).fidelity;
    }
    const OpssSequence physical =
        seq.representation == ControlRep::physical ? seq : to_physical(seq, map);
    return evolve_sequence(model, physical, model.default_initial(), model.default_target(), error)
        .fidelity;
}

} // namespace

FidelityLandscape scan_landscape(const Model& model, const TwoLevelMap& map,
                                 const OpssSequence& seq, const GridSpec& grid, EvalEngine engine,
                                 const std::string& sequence_tag) {
    FidelityLandscape land;
    land.eps1 = grid.eps1;
    land.eps2 = grid.eps2;
    land.model_tag = model.tag();
    land.sequence_tag = sequence_tag;
    const Eigen::Index n1 = grid.eps1.size();
    const Eigen::Index n2 = grid.eps2.size();
    land.fidelity.resize(n1, n2);
    if (n1 == 0 || n2 == 0) return land;

    // Full-model scans convert the representation once up front.
    const OpssSequence prepared =
        engine == EvalEngine::full_model && seq.representation == ControlRep::detuning
            ? to_physical(seq, map)
            : seq;

    parallel_for(static_cast<std::size_t>(n1 * n2), [&](std::size_t flat) {
        const Eigen::Index i = static_cast<Eigen::Index>(flat) / n2;
        const Eigen::Index j = static_cast<Eigen::Index>(flat) % n2;
        const ErrorSpec error{grid.eps1[i], grid.eps2[j]};
        try {
            land.fidelity(i, j) = evaluate_fidelity(model, map, prepared, error, engine);
        } catch (const std::exception& ex) {
            throw NumericalError("landscape point (eps1=" + std::to_string(grid.eps1[i]) +
                                 ", eps2=" + std::to_string(grid.eps2[j]) + "): " + ex.what());
        }
    });
    return land;
}

double high_fidelity_radius(const FidelityLandscape& land, double threshold) {
    const Eigen::Index n1 = land.eps1.size();
    const Eigen::Index n2 = land.eps2.size();
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("empty landscape");
    const double tol1 = 1e-12 * std::max(1.0, land.eps1.cwiseAbs().maxCoeff());
    const double tol2 = 1e-12 * std::max(1.0, land.eps2.cwiseAbs().maxCoeff());
    const bool centered = (land.eps1.cwiseAbs().minCoeff() <= tol1) &&
                          (land.eps2.cwiseAbs().minCoeff() <= tol2);
    if (!centered) throw std::invalid_argument("landscape must contain the zero-error point");

    double nearest_fail = std::numeric_limits<double>::infinity();
    double extent = 0.0;
    for (Eigen::Index i = 0; i < n1; ++i) {
        for (Eigen::Index j = 0; j < n2; ++j) {
            const double r = std::hypot(land.eps1[i], land.eps2[j]);
            extent = std::max(extent, r);
            if (land.fidelity(i, j) < threshold) nearest_fail = std::min(nearest_fail, r);
        }
    }
    return std::isfinite(nearest_fail) ? nearest_fail : extent;
}

WindowStats window_stats(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                         ErrorAxis axis, double center_eps, int n_samples, EvalEngine engine) {
    if (n_samples < 3) throw std::invalid_argument("window_stats needs n_samples >= 3");
    Eigen::VectorXd eps;
    if (center_eps == 0.0) {
        eps = Eigen::VectorXd::Zero(1);
    } else {
        double lo = 0.9 * center_eps;
        double hi = 1.1 * center_eps;
        if (lo > hi) std::swap(lo, hi);
        eps = Eigen::VectorXd::LinSpaced(n_samples, lo, hi);
    }

    Eigen::VectorXd fidelities(eps.size());
    parallel_for(static_cast<std::size_t>(eps.size()), [&](std::size_t i) {
        fidelities[static_cast<Eigen::Index>(i)] = evaluate_fidelity(
            model, map, seq, on_axis(axis, eps[static_cast<Eigen::Index>(i)]), engine);
    });

    WindowStats stats;
    stats.center_eps = center_eps;
    stats.mean = fidelities.mean();
    stats.min = fidelities.minCoeff();
    stats.max = fidelities.maxCoeff();
    return stats;
}

double mean_fidelity(const Model& model, const TwoLevelMap& map, const OpssSequence& seq,
                     ErrorAxis axis, const Eigen::VectorXd& eps_values, EvalEngine engine) {
    if (eps_values.size() == 0) throw std::invalid_argument("empty error grid");
    Eigen::VectorXd fidelities(eps_values.size());
    parallel_for(static_cast<std::size_t>(eps_values.size()), [&](std::size_t i) {
        fidelities[static_cast<Eigen::Index>(i)] = evaluate_fidelity(
            model, map, seq, on_axis(axis, eps_values[static_cast<Eigen::Index>(i)]), engine);
    });
    return fidelities.mean();
}

} // namespace opss
