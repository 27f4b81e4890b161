#include "opss/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "opss/errors.hpp"
#include "opss/spectrum.hpp"

namespace opss {

using std::complex;

Eigen::MatrixXcd segment_propagator(const Eigen::MatrixXcd& h, double tau) {
    if (tau < 0.0) throw std::invalid_argument("segment duration must be non-negative");
    const Eigensystem es = diagonalize(h);
    const Eigen::VectorXcd phases =
        (complex<double>(0.0, -tau) * es.values.cast<complex<double>>()).array().exp();
    return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

namespace {

struct SegmentBasis {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

void advance(Eigen::VectorXcd& state, const SegmentBasis& basis, double tau) {
    Eigen::VectorXcd coeff = basis.vectors.adjoint() * state;
    for (Eigen::Index n = 0; n < coeff.size(); ++n) {
        coeff[n] *= std::exp(complex<double>(0.0, -basis.values[n] * tau));
    }
    state = basis.vectors * coeff;
}

std::vector<int> tracked_or_default(const TrajectorySpec& spec, int initial, int target) {
    if (!spec.tracked.empty()) return spec.tracked;
    return {initial, target};
}

} // namespace

EvolutionResult evolve_sequence(const Model& model, const OpssSequence& seq, int initial,
                                int target, const ErrorSpec& error,
                                const TrajectorySpec& trajectory) {
    seq.validate();
    error.validate();
    if (seq.representation != ControlRep::physical) {
        throw RepresentationError("evolve_sequence needs a physical-representation sequence; "
                                  "convert detunings with to_physical first");
    }
    const int dim = model.dim();
    if (initial < 0 || initial >= dim || target < 0 || target >= dim) {
        throw std::out_of_range("initial/target state outside the truncated space");
    }

    const Model perturbed = apply_error(model, error);
    const double tau = seq.segment_duration();

    std::vector<SegmentBasis> bases(static_cast<std::size_t>(seq.n_segments));
    for (int k = 0; k < seq.n_segments; ++k) {
        const Eigensystem es =
            diagonalize(perturbed.hamiltonian(scaled_control(seq.controls[k], error)));
        bases[static_cast<std::size_t>(k)] = {es.values, es.vectors};
    }

    EvolutionResult result;
    result.tracked = tracked_or_default(trajectory, initial, target);

    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state[initial] = 1.0;

    if (trajectory.samples > 0) {
        const int ns = trajectory.samples;
        result.times.resize(static_cast<std::size_t>(ns));
        result.populations.resize(ns, static_cast<Eigen::Index>(result.tracked.size()));
        for (int s = 0; s < ns; ++s) {
            const double t = seq.total_time * static_cast<double>(s) / (ns - 1);
            // Re-propagate from scratch up to t (exact, segment-wise).
            Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
            psi[initial] = 1.0;
            double remaining = t;
            for (int k = 0; k < seq.n_segments && remaining > 0.0; ++k) {
                const double dt = std::min(remaining, tau);
                advance(psi, bases[static_cast<std::size_t>(k)], dt);
                remaining -= dt;
            }
            result.times[static_cast<std::size_t>(s)] = t;
            for (std::size_t j = 0; j < result.tracked.size(); ++j) {
                result.populations(s, static_cast<Eigen::Index>(j)) =
                    std::norm(psi[result.tracked[j]]);
            }
        }
    }

    for (int k = 0; k < seq.n_segments; ++k) {
        advance(state, bases[static_cast<std::size_t>(k)], tau);
    }

    result.final_state = state;
    result.fidelity = std::norm(state[target]);
    return result;
}

Eigen::Vector2cd evolve_two_level_state(std::span<const double> deltas, double rabi_frequency,
                                        double total_time, Eigen::Vector2cd start) {
    if (deltas.empty()) throw std::invalid_argument("empty detuning sequence");
    if (!(total_time >= 0.0)) throw std::invalid_argument("total_time must be non-negative");
    const double tau = total_time / static_cast<double>(deltas.size());
    const double c = 0.5 * rabi_frequency;  // coupling matrix element
    Eigen::Vector2cd psi = start;
    for (const double delta : deltas) {
        const double s = 0.5 * delta;
        const double r = std::hypot(c, s);
        const double co = std::cos(r * tau);
        const double sn = r == 0.0 ? tau : std::sin(r * tau) / r;
        // H = [[0, c], [c, delta]] = s I + [[-s, c], [c, s]]
        const complex<double> phase = std::exp(complex<double>(0.0, -s * tau));
        const complex<double> u00 = phase * complex<double>(co, s * sn);
        const complex<double> u11 = phase * complex<double>(co, -s * sn);
        const complex<double> u01 = phase * complex<double>(0.0, -c * sn);
        const complex<double> a = u00 * psi[0] + u01 * psi[1];
        const complex<double> b = u01 * psi[0] + u11 * psi[1];
        psi[0] = a;
        psi[1] = b;
    }
    return psi;
}

EvolutionResult evolve_effective(const Model& model, const TwoLevelMap& map,
                                 const OpssSequence& seq, const ErrorSpec& error,
                                 const TrajectorySpec& trajectory) {
    seq.validate();
    error.validate();

    // Recover the physical controls, apply the error, map back to detunings.
    const Model perturbed = apply_error(model, error);
    std::vector<double> deltas(static_cast<std::size_t>(seq.n_segments));
    for (int k = 0; k < seq.n_segments; ++k) {
        const double omega = seq.representation == ControlRep::physical
                                 ? seq.controls[static_cast<std::size_t>(k)]
                                 : map.control_for_delta(seq.controls[static_cast<std::size_t>(k)]);
        deltas[static_cast<std::size_t>(k)] = map.delta(perturbed, scaled_control(omega, error));
    }

    EvolutionResult result;
    result.tracked = {0, 1};

    if (trajectory.samples > 0) {
        const int ns = trajectory.samples;
        result.times.resize(static_cast<std::size_t>(ns));
        result.populations.resize(ns, 2);
        const double tau = seq.segment_duration();
        for (int s = 0; s < ns; ++s) {
            const double t = seq.total_time * static_cast<double>(s) / (ns - 1);
            Eigen::Vector2cd psi(1.0, 0.0);
            double remaining = t;
            for (int k = 0; k < seq.n_segments && remaining > 0.0; ++k) {
                const double dt = std::min(remaining, tau);
                const double d = deltas[static_cast<std::size_t>(k)];
                psi = evolve_two_level_state(std::span<const double>(&d, 1),
                                             map.rabi_frequency(), dt, psi);
                remaining -= dt;
            }
            result.times[static_cast<std::size_t>(s)] = t;
            result.populations(s, 0) = std::norm(psi[0]);
            result.populations(s, 1) = std::norm(psi[1]);
        }
    }

    const Eigen::Vector2cd final_state =
        evolve_two_level_state(deltas, map.rabi_frequency(), seq.total_time);
    result.final_state = final_state;
    result.fidelity = std::norm(final_state[1]);
    return result;
}

TransferPoint first_population_maximum(const Model& model, double control, int initial,
                                       int target, double t_hint) {
    if (!(t_hint > 0.0)) throw std::invalid_argument("t_hint must be positive");
    const Eigensystem es = diagonalize(model.hamiltonian(control));
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(model.dim());
    psi0[initial] = 1.0;
    const Eigen::VectorXcd coeff = es.vectors.adjoint() * psi0;
    const Eigen::VectorXcd weight = es.vectors.row(target).transpose();

    auto population = [&](double t) {
        complex<double> amp = 0.0;
        for (Eigen::Index n = 0; n < coeff.size(); ++n) {
            amp += weight[n] * std::exp(complex<double>(0.0, -(es.values[n] - es.values[0]) * t)) *
                   coeff[n];
        }
        return std::norm(amp);
    };

    // Coarse scan around the hint, then two refinement passes.
    double lo = 0.6 * t_hint;
    double hi = 1.4 * t_hint;
    double best_t = t_hint;
    double best_p = -1.0;
    int n = 4001;
    for (int pass = 0; pass < 3; ++pass) {
        best_p = -1.0;
        for (int i = 0; i < n; ++i) {
            const double t = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
            const double p = population(t);
            if (p > best_p) {
                best_p = p;
                best_t = t;
            }
        }
        const double step = (hi - lo) / (n - 1);
        lo = std::max(0.0, best_t - 2.0 * step);
        hi = best_t + 2.0 * step;
        n = 2001;
    }
    return {best_t, best_p};
}

OpssSequence baseline_sequence(const Model& model, const TwoLevelMap& map) {
    const double control = map.resonant_control();
    const double t_hint = std::numbers::pi / map.rabi_frequency();
    const TransferPoint peak = first_population_maximum(
        model, control, model.default_initial(), model.default_target(), t_hint);
    return OpssSequence::physical({control}, peak.time);
}

} // namespace opss
