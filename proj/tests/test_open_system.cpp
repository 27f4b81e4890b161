#include <cmath>
#include <complex>

#include "doctest.h"

#include "opss/errors.hpp"
#include "opss/fock.hpp"
#include "opss/open_system.hpp"
#include "opss/propagation.hpp"
#include "opss/rng.hpp"

using namespace opss;
using std::complex;

namespace {

Eigen::MatrixXcd random_density(int dim, Rng& rng) {
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            m(i, j) = complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        }
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace();
    return rho;
}

} // namespace

TEST_CASE("dressed jump operators reduce to bare lowering operators at zero coupling") {
    // Truncation keeps the spectrum non-degenerate: omega_a/2 incommensurate
    // with omega_c multiples.
    const Model model = Model::three_photon({1.0, 0.37, 0.0}, {6, 2});
    const Eigen::MatrixXcd h = model.hamiltonian();
    const JumpOperators ops = dressed_jump_operators(model, h);

    // X1 -> a (only photon-lowering transitions survive the energy filter).
    const Eigen::MatrixXcd a_full =
        kron(Eigen::MatrixXcd::Identity(2, 2), ladder_operator(6));
    CHECK((ops.x1 - a_full).cwiseAbs().maxCoeff() <= 1e-10);

    // X2 -> sigma_minus (|g><e| (x) I).
    Eigen::MatrixXcd sminus = Eigen::MatrixXcd::Zero(2, 2);
    sminus(0, 1) = 1.0;
    const Eigen::MatrixXcd sm_full = kron(sminus, Eigen::MatrixXcd::Identity(6, 6));
    CHECK((ops.x2 - sm_full).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Casimir X2 reduces to the bare phonon annihilation at g = 0") {
    const Model model = Model::casimir({1.55, 1.0, 0.0}, {4, 6});
    const JumpOperators ops = dressed_jump_operators(model, model.hamiltonian());
    const Eigen::MatrixXcd b_full =
        kron(Eigen::MatrixXcd::Identity(4, 4), ladder_operator(6));
    CHECK((ops.x2 - b_full).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("the ground state is annihilated by every jump operator") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    const JumpOperators ops = dressed_jump_operators(model, model.hamiltonian());
    const Eigen::VectorXcd ground = ops.basis.vectors.col(0);
    CHECK((ops.x1 * ground).norm() <= 1e-10);
    CHECK((ops.x2 * ground).norm() <= 1e-10);
}

TEST_CASE("degenerate pairs are excluded from the transition sums") {
    // Hand-built diagonal Hamiltonian with |g,0> and |g,1> near-degenerate
    // (inside the 1e-9 omega_ref tolerance); the photon quadrature connects
    // them, so that transition must be dropped in both directions.
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.0}, {4, 2});
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(8, 8);
    const int g0 = model.index_of(0, 0);
    const int g1 = model.index_of(0, 1);
    h(g0, g0) = 0.0;
    h(g1, g1) = 5e-11;  // within tolerance of g0
    double level = 1.0;
    for (int i = 0; i < 8; ++i) {
        if (i != g0 && i != g1) h(i, i) = level++;
    }
    const JumpOperators ops = dressed_jump_operators(model, h);
    CHECK(ops.excluded_pairs > 0);
    CHECK(std::abs(ops.x1(g0, g1)) <= 1e-12);
    CHECK(std::abs(ops.x1(g1, g0)) <= 1e-12);
}

TEST_CASE("lindblad_rhs basics") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06}, {5, 2});
    const Eigen::MatrixXcd h = model.hamiltonian();
    const JumpOperators ops = dressed_jump_operators(model, h);
    Rng rng(8);

    SUBCASE("kappa = gamma = 0 reduces to the commutator") {
        const Eigen::MatrixXcd rho = random_density(model.dim(), rng);
        const Eigen::MatrixXcd rhs = lindblad_rhs(rho, h, ops, {0.0, 0.0});
        const Eigen::MatrixXcd commutator =
            complex<double>(0, -1) * (h * rho - rho * h);
        CHECK((rhs - commutator).cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("the dressed ground state is dark") {
        const Eigen::VectorXcd ground = ops.basis.vectors.col(0);
        const Eigen::MatrixXcd rho = ground * ground.adjoint();
        const Eigen::MatrixXcd rhs = lindblad_rhs(rho, h, ops, {6e-5, 6e-5});
        CHECK(rhs.cwiseAbs().maxCoeff() <= 1e-12);
    }
    SUBCASE("the generator is trace-free on random Hermitian inputs") {
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::MatrixXcd rho = random_density(model.dim(), rng);
            const Eigen::MatrixXcd rhs = lindblad_rhs(rho, h, ops, {3e-4, 5e-4});
            CHECK(std::abs(rhs.trace()) <= 1e-12);
        }
    }
}

TEST_CASE("closed-system master equation matches unitary propagation") {
    // Small truncation and a short horizon keep this fast; tolerance 1e-6 per
    // the integrator contract.
    const Model model = Model::three_photon({1.0, 0.344, 0.06}, {6, 2});
    const OpssSequence seq = OpssSequence::physical({0.344, 0.346}, 160.0);

    MasterEqOptions options;
    options.n_samples = 9;
    const FluxTrace trace =
        integrate_master_equation(model, seq, {0.0, 0.0}, model.default_initial(), {}, options);

    TrajectorySpec traj;
    traj.samples = 9;
    const EvolutionResult unitary = evolve_sequence(model, seq, model.default_initial(),
                                                    model.default_target(), {}, traj);
    for (int s = 0; s < 9; ++s) {
        CHECK(std::abs(trace.populations(s, 0) - unitary.populations(s, 0)) <= 1e-6);
        CHECK(std::abs(trace.populations(s, 1) - unitary.populations(s, 1)) <= 1e-6);
    }
    CHECK(trace.final_trace_defect <= 1e-9);
    CHECK(trace.flux.back() == 0.0);  // kappa = 0 -> no output flux
}

TEST_CASE("dissipative integration preserves the density-matrix contracts") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06}, {6, 2});
    const OpssSequence seq = OpssSequence::physical({0.344}, 400.0);
    const DissipationConfig d{6e-5, 6e-5};

    MasterEqOptions options;
    options.n_samples = 21;
    const FluxTrace trace =
        integrate_master_equation(model, seq, d, model.default_initial(), {}, options);

    CHECK(trace.final_trace_defect <= 1e-6);
    CHECK(trace.min_eigenvalue >= -1e-8);
    CHECK(trace.max_hermiticity_defect <= 1e-9);
    for (const double flux : trace.flux) CHECK(flux >= -1e-12);
    // Populations stay physical.
    CHECK(trace.populations.minCoeff() >= -1e-9);
    CHECK(trace.populations.maxCoeff() <= 1.0 + 1e-9);
}

TEST_CASE("flux landscape maps one integration per error value") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06}, {5, 2});
    const OpssSequence seq = OpssSequence::physical({0.344}, 120.0);
    MasterEqOptions options;
    options.n_samples = 5;
    options.track_positivity = false;
    const FluxLandscape land =
        flux_landscape(model, seq, {6e-5, 6e-5}, ErrorAxis::control, {-0.01, 0.0, 0.01}, options);
    CHECK(land.flux.rows() == 5);
    CHECK(land.flux.cols() == 3);
    CHECK(land.t_over_t_total.front() == 0.0);
    CHECK(land.t_over_t_total.back() == 1.0);
    // Zero time, zero flux (rho starts in a bare state with no photonic
    // lowering weight at these scales is not guaranteed; but flux must be
    // finite and non-negative everywhere).
    for (Eigen::Index s = 0; s < land.flux.rows(); ++s) {
        for (Eigen::Index j = 0; j < land.flux.cols(); ++j) {
            CHECK(land.flux(s, j) >= -1e-12);
        }
    }
}

TEST_CASE("a detuning-representation sequence is rejected") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06}, {5, 2});
    const OpssSequence seq = OpssSequence::detuning({0.0}, 10.0);
    CHECK_THROWS_AS(
        integrate_master_equation(model, seq, {1e-4, 0.0}, model.default_initial()),
        RepresentationError);
}
