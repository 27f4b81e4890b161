#include "opss/open_system.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "opss/errors.hpp"
#include "opss/parallel.hpp"

namespace opss {

using std::complex;

void DissipationConfig::validate() const {
    if (kappa < 0.0 || gamma < 0.0) throw std::invalid_argument("decay rates must be >= 0");
}

namespace {

// Strictly-lowering projection of Q in the eigenbasis: entries (m, n) survive
// only when E_n > E_m + tol; near-degenerate pairs are excluded in both
// directions.
Eigen::MatrixXcd lowering_projection(const Eigen::MatrixXcd& q_eigen,
                                     const Eigen::VectorXd& energies, double tol,
                                     int& excluded) {
    const Eigen::Index dim = energies.size();
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = m + 1; n < dim; ++n) {
            if (energies[n] - energies[m] > tol) {
                x(m, n) = q_eigen(m, n);
            } else if (std::abs(q_eigen(m, n)) > 0.0) {
                ++excluded;
            }
        }
    }
    return x;
}

} // namespace

JumpOperators dressed_jump_operators(const Model& model, const Eigen::MatrixXcd& h,
                                     double degeneracy_tol_scale) {
    JumpOperators ops;
    ops.basis = diagonalize(h);
    const double tol = degeneracy_tol_scale * model.reference_frequency();

    const Eigen::MatrixXcd q1 =
        ops.basis.vectors.adjoint() * model.photon_quadrature() * ops.basis.vectors;
    const Eigen::MatrixXcd q2 =
        ops.basis.vectors.adjoint() * model.second_quadrature() * ops.basis.vectors;

    const Eigen::MatrixXcd x1_eigen =
        lowering_projection(q1, ops.basis.values, tol, ops.excluded_pairs);
    const Eigen::MatrixXcd x2_eigen =
        lowering_projection(q2, ops.basis.values, tol, ops.excluded_pairs);

    ops.x1 = ops.basis.vectors * x1_eigen * ops.basis.vectors.adjoint();
    ops.x2 = ops.basis.vectors * x2_eigen * ops.basis.vectors.adjoint();
    return ops;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& h,
                              const JumpOperators& ops, const DissipationConfig& d) {
    if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
        throw std::invalid_argument("lindblad_rhs: shape mismatch");
    }
    const complex<double> minus_i(0.0, -1.0);
    Eigen::MatrixXcd out = minus_i * (h * rho - rho * h);
    if (d.kappa > 0.0) {
        const Eigen::MatrixXcd a1 = ops.x1.adjoint() * ops.x1;
        out += d.kappa * (ops.x1 * rho * ops.x1.adjoint() - 0.5 * (a1 * rho + rho * a1));
    }
    if (d.gamma > 0.0) {
        const Eigen::MatrixXcd a2 = ops.x2.adjoint() * ops.x2;
        out += d.gamma * (ops.x2 * rho * ops.x2.adjoint() - 0.5 * (a2 * rho + rho * a2));
    }
    return out;
}

namespace {

// Per-segment integrator state in the segment's eigenbasis, where the
// commutator is elementwise and the jump operators are strictly upper
// triangular (triangular products halve the dissipator cost).
struct SegmentWorkspace {
    Eigen::MatrixXcd phase;          // -i (E_m - E_n) prefactors
    Eigen::MatrixXcd x1s, x2s;       // sqrt(rate)-scaled eigenbasis jump operators
    Eigen::MatrixXcd x1s_adj, x2s_adj;
    Eigen::MatrixXcd damping;        // (kappa X1^dag X1 + gamma X2^dag X2) / 2
    Eigen::MatrixXcd k1, k2, k3, k4, tmp, scratch;
    bool channel1 = false, channel2 = false;

    void resize(int dim) {
        k1.resize(dim, dim);
        k2.resize(dim, dim);
        k3.resize(dim, dim);
        k4.resize(dim, dim);
        tmp.resize(dim, dim);
        scratch.resize(dim, dim);
    }

    void rhs(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) {
        out = phase.cwiseProduct(rho);
        if (channel1) {
            scratch.noalias() = x1s.triangularView<Eigen::StrictlyUpper>() * rho;
            out.noalias() += scratch * x1s_adj.triangularView<Eigen::StrictlyLower>();
        }
        if (channel2) {
            scratch.noalias() = x2s.triangularView<Eigen::StrictlyUpper>() * rho;
            out.noalias() += scratch * x2s_adj.triangularView<Eigen::StrictlyLower>();
        }
        if (channel1 || channel2) {
            out.noalias() -= damping * rho;
            out.noalias() -= rho * damping;
        }
    }

    void rk4_step(Eigen::MatrixXcd& rho, double h) {
        rhs(rho, k1);
        tmp = rho + (0.5 * h) * k1;
        rhs(tmp, k2);
        tmp = rho + (0.5 * h) * k2;
        rhs(tmp, k3);
        tmp = rho + h * k3;
        rhs(tmp, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    // RK4 from the current state across span, landing exactly on the endpoint.
    void advance(Eigen::MatrixXcd& rho, double span, double h_target) {
        if (span <= 0.0) return;
        const int steps = std::max(1, static_cast<int>(std::ceil(span / h_target)));
        const double h = span / steps;
        for (int s = 0; s < steps; ++s) rk4_step(rho, h);
    }
};

} // namespace

FluxTrace integrate_master_equation(const Model& model, const OpssSequence& seq,
                                    const DissipationConfig& d, int initial,
                                    const ErrorSpec& error, const MasterEqOptions& options) {
    seq.validate();
    error.validate();
    d.validate();
    if (seq.representation != ControlRep::physical) {
        throw RepresentationError("integrate_master_equation needs a physical-representation "
                                  "sequence");
    }
    if (options.n_samples < 2) throw std::invalid_argument("need at least 2 output samples");
    const int dim = model.dim();
    if (initial < 0 || initial >= dim) throw std::out_of_range("initial state outside space");

    const Model perturbed = apply_error(model, error);
    const double tau = seq.segment_duration();
    const double total = seq.total_time;
    const int ns = options.n_samples;
    const double sample_dt = total / (ns - 1);
    const double tol_t = 1e-9 * total;

    FluxTrace trace;
    trace.total_time = total;
    trace.tracked = options.tracked_states.empty()
                        ? std::vector<int>{model.default_initial(), model.default_target()}
                        : options.tracked_states;
    trace.times.resize(static_cast<std::size_t>(ns));
    trace.flux.resize(static_cast<std::size_t>(ns));
    trace.populations.resize(ns, static_cast<Eigen::Index>(trace.tracked.size()));

    Eigen::MatrixXcd rho_lab = Eigen::MatrixXcd::Zero(dim, dim);
    rho_lab(initial, initial) = 1.0;

    int sample_index = 0;
    double min_eigenvalue = 0.0;
    double max_herm = 0.0;

    auto record_sample = [&](const Eigen::MatrixXcd& rho_eigen, const Eigen::MatrixXcd& vectors,
                             const Eigen::MatrixXcd& a1_eigen, double t) {
        const double flux =
            d.kappa > 0.0 ? d.kappa * (rho_eigen.cwiseProduct(a1_eigen.transpose())).sum().real()
                          : 0.0;
        trace.times[static_cast<std::size_t>(sample_index)] = t;
        trace.flux[static_cast<std::size_t>(sample_index)] = flux;
        for (std::size_t j = 0; j < trace.tracked.size(); ++j) {
            const Eigen::RowVectorXcd row = vectors.row(trace.tracked[j]);
            trace.populations(sample_index, static_cast<Eigen::Index>(j)) =
                (row * rho_eigen * row.adjoint())(0, 0).real();
        }
        if (options.track_positivity) {
            max_herm = std::max(max_herm, hermiticity_defect(rho_eigen));
            const Eigen::VectorXd eig =
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
                    (0.5 * (rho_eigen + rho_eigen.adjoint())).eval(), Eigen::EigenvaluesOnly)
                    .eigenvalues();
            min_eigenvalue = std::min(min_eigenvalue, eig.minCoeff());
        }
        ++sample_index;
    };

    for (int k = 0; k < seq.n_segments; ++k) {
        const double control = scaled_control(seq.controls[static_cast<std::size_t>(k)], error);
        const Eigen::MatrixXcd h = perturbed.hamiltonian(control);
        const JumpOperators ops = dressed_jump_operators(perturbed, h);
        const Eigen::MatrixXcd& v = ops.basis.vectors;
        const Eigen::VectorXd& energies = ops.basis.values;

        SegmentWorkspace ws;
        ws.kappa = d.kappa;
        ws.gamma = d.gamma;
        ws.phase.resize(dim, dim);
        for (int m = 0; m < dim; ++m) {
            for (int n = 0; n < dim; ++n) {
                ws.phase(m, n) = complex<double>(0.0, -(energies[m] - energies[n]));
            }
        }
        ws.x1 = v.adjoint() * ops.x1 * v;
        ws.x2 = v.adjoint() * ops.x2 * v;
        ws.a1 = ws.x1.adjoint() * ws.x1;
        ws.a2 = ws.x2.adjoint() * ws.x2;
        ws.resize(dim);

        const double spread = energies[dim - 1] - energies[0];
        const double fast_period = spread > 0.0 ? 2.0 * std::numbers::pi / spread : tau;
        const double h_target =
            std::min(tau, fast_period) / static_cast<double>(options.steps_per_fast_period);

        const double seg_start = k * tau;
        const double seg_end = seg_start + tau;

        Eigen::MatrixXcd rho = v.adjoint() * rho_lab * v;
        double current = seg_start;

        while (sample_index < ns && sample_index * sample_dt <= seg_end + tol_t) {
            const double t_sample = sample_index * sample_dt;
            const double target = std::clamp(t_sample, current, seg_end);
            ws.advance(rho, target - current, h_target);
            current = target;
            record_sample(rho, v, ws.a1, t_sample);
        }
        ws.advance(rho, seg_end - current, h_target);

        rho_lab.noalias() = v * rho * v.adjoint();

        const complex<double> tr = rho_lab.trace();
        const double drift = std::abs(tr.real() - 1.0) + std::abs(tr.imag());
        if (drift > options.trace_tol) {
            throw NumericalError("trace drift " + std::to_string(drift) + " after segment " +
                                 std::to_string(k) +
                                 "; reduce the step (increase steps_per_fast_period)");
        }
    }

    trace.final_rho = rho_lab;
    trace.final_trace_defect = std::abs(rho_lab.trace().real() - 1.0);
    trace.min_eigenvalue = min_eigenvalue;
    trace.max_hermiticity_defect = max_herm;
    return trace;
}

FluxLandscape flux_landscape(const Model& model, const OpssSequence& seq,
                             const DissipationConfig& d, ErrorAxis axis,
                             const std::vector<double>& eps_values,
                             const MasterEqOptions& options) {
    if (eps_values.empty()) throw std::invalid_argument("flux landscape needs error values");
    FluxLandscape land;
    land.eps = eps_values;
    land.axis = to_string(axis);
    land.t_over_t_total.resize(static_cast<std::size_t>(options.n_samples));
    for (int s = 0; s < options.n_samples; ++s) {
        land.t_over_t_total[static_cast<std::size_t>(s)] =
            static_cast<double>(s) / (options.n_samples - 1);
    }
    land.flux.resize(options.n_samples, static_cast<Eigen::Index>(eps_values.size()));

    parallel_for(eps_values.size(), [&](std::size_t j) {
        const FluxTrace trace = integrate_master_equation(
            model, seq, d, model.default_initial(), on_axis(axis, eps_values[j]), options);
        for (int s = 0; s < options.n_samples; ++s) {
            land.flux(s, static_cast<Eigen::Index>(j)) = trace.flux[static_cast<std::size_t>(s)];
        }
    });
    return land;
}

} // namespace opss
