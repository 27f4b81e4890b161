#include <cmath>

#include "doctest.h"

#include "opss/effective.hpp"
#include "opss/errors.hpp"
#include "opss/models.hpp"
#include "opss/spectrum.hpp"

using namespace opss;

TEST_CASE("diagonalize handles trivial 2x2 inputs") {
    Eigen::MatrixXcd diag(2, 2);
    diag << 1.0, 0.0, 0.0, 2.0;
    const Eigensystem es = diagonalize(diag);
    CHECK(es.values[0] == doctest::Approx(1.0));
    CHECK(es.values[1] == doctest::Approx(2.0));
    CHECK(std::abs(std::abs(es.vectors(0, 0)) - 1.0) < 1e-14);

    Eigen::MatrixXcd sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const Eigensystem ex = diagonalize(sx);
    CHECK(ex.values[0] == doctest::Approx(-1.0));
    CHECK(ex.values[1] == doctest::Approx(1.0));
}

TEST_CASE("diagonalize rejects non-Hermitian input") {
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(diagonalize(bad), ContractError);
}

TEST_CASE("diagonalize residuals and orthonormality on a full model") {
    const Model model = Model::three_photon({1.0, 0.344, 0.06});
    const Eigen::MatrixXcd h = model.hamiltonian();
    const Eigensystem es = diagonalize(h);
    const double scale = es.values.cwiseAbs().maxCoeff();
    for (int n = 0; n < model.dim(); ++n) {
        const double residual = (h * es.vectors.col(n) - es.values[n] * es.vectors.col(n)).norm();
        CHECK(residual <= 1e-9 * scale);
    }
    const Eigen::MatrixXcd gram = es.vectors.adjoint() * es.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(model.dim(), model.dim())).cwiseAbs().maxCoeff() <=
          1e-10);
}

TEST_CASE("diagonalizing the effective matrix reproduces the two-level splitting") {
    // Oracle: closed-form splitting sqrt(delta^2 + (2 offdiag)^2) of a 2x2
    // symmetric matrix, evaluated at resonance where delta = 0.
    const ThreePhotonParams p{1.0, 1.0 / 3.0, 0.06};
    const Eigen::Matrix2d m = effective_three_photon(p);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m);
    const double splitting = solver.eigenvalues()[1] - solver.eigenvalues()[0];
    const double delta = m(0, 0) - m(1, 1);
    const double closed_form = std::sqrt(delta * delta + 4.0 * m(0, 1) * m(0, 1));
    CHECK(splitting == doctest::Approx(closed_form).epsilon(1e-12));
}

TEST_CASE("three-photon avoided crossing sits at the full-model gap minimum") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const auto crossing =
        find_avoided_crossing(model, default_ratio_range(model.kind()), {3, 4});
    // Full-model value, computed independently (dense scan + golden refine on
    // an independent implementation). It lands between the bare resonance 1/3
    // and the second-order perturbative zero at 0.34413.
    CHECK(crossing.ratio == doctest::Approx(0.343882).epsilon(2e-3));
    CHECK(crossing.ratio > 1.0 / 3.0);
    CHECK(crossing.ratio < 0.34420);
    // Gap matches twice the effective coupling to better than 10%.
    const double omega_eff = 9.0 * std::sqrt(6.0) * std::pow(0.06, 3) / 4.0;
    CHECK(std::abs(crossing.gap - 2.0 * omega_eff) <= 0.1 * 2.0 * omega_eff);
}

TEST_CASE("Casimir avoided crossing reproduces the fine-structure location") {
    const Model model = Model::casimir({1.5, 1.0, 0.001});
    const auto crossing =
        find_avoided_crossing(model, default_ratio_range(model.kind()), {5, 6});
    CHECK(std::abs(crossing.ratio - 1.5000105) <= 2e-6);
    // Analytic prediction: zero of delta(omega_c) at 3/2 + 21 g^2 / (2 omega_m^2).
    const double analytic = 1.5 + 10.5 * 0.001 * 0.001;
    CHECK(std::abs(crossing.ratio - analytic) <= 2e-7);
    const double omega_eff = 18.0 * std::sqrt(3.0) * std::pow(0.001, 3);
    CHECK(std::abs(crossing.gap - 2.0 * omega_eff) <= 0.1 * 2.0 * omega_eff);
}

TEST_CASE("uncoupled models produce an exact degeneracy, not an avoided crossing") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.0});
    CHECK_THROWS_AS(find_avoided_crossing(model, {0.31, 0.36, 101}, {3, 4}), NoCrossingError);
}

TEST_CASE("a bracket without an interior minimum is rejected") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    CHECK_THROWS_AS(find_avoided_crossing(model, {0.36, 0.38, 41}, {3, 4}), NoCrossingError);
}

TEST_CASE("spectrum scan keeps the requested level count and the tracked gap") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const auto slices = spectrum_scan(model, {0.32, 0.36, 11}, {3, 4}, 8);
    CHECK(slices.size() == 11);
    for (const auto& slice : slices) {
        CHECK(slice.eigenvalues.size() == 8);
        CHECK(slice.selected_gap >= 0.0);
        CHECK(slice.selected_gap ==
              doctest::Approx(slice.eigenvalues[4] - slice.eigenvalues[3]).epsilon(1e-12));
    }
}
