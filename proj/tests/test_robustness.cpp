#include <cmath>

#include "doctest.h"

#include "opss/propagation.hpp"
#include "opss/robustness.hpp"
#include "opss/rng.hpp"

using namespace opss;

TEST_CASE("apply_error scales the documented frequencies and nothing else") {
    const ThreePhotonParams p{1.0, 0.34, 0.06};
    SUBCASE("identity at zero error") {
        const ThreePhotonParams q = apply_error(p, ErrorSpec{0.0, 0.0});
        CHECK(q.omega_a == p.omega_a);
        CHECK(q.omega_c == p.omega_c);
        CHECK(q.lambda == p.lambda);
    }
    SUBCASE("primary error scales omega_a only") {
        const ThreePhotonParams q = apply_error(p, ErrorSpec{0.005, 0.0});
        CHECK(q.omega_a == doctest::Approx(1.005).epsilon(1e-15));
        CHECK(q.lambda == p.lambda);
    }
    SUBCASE("control error scales segment frequencies") {
        CHECK(scaled_control(0.34, ErrorSpec{0.0, 0.005}) ==
              doctest::Approx(0.34 * 1.005).epsilon(1e-15));
    }
    SUBCASE("Casimir primary error scales omega_m") {
        const CasimirParams c{1.5, 1.0, 0.001};
        const CasimirParams q = apply_error(c, ErrorSpec{0.01, 0.0});
        CHECK(q.omega_m == doctest::Approx(1.01));
        CHECK(q.g == c.g);
    }
    SUBCASE("errors beyond the sanity bound are rejected") {
        const ErrorSpec oversized{0.2, 0.0};
        CHECK_THROWS_AS(oversized.validate(), std::invalid_argument);
    }
}

TEST_CASE("common-mode errors ride the diagonal ridge") {
    // eps_primary = eps_control scales both frequencies equally; the bare
    // resonance mismatch cancels and the fidelity stays near its ideal value.
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::calibrated(model);
    const OpssSequence baseline = baseline_sequence(model, map);
    const double f0 =
        evolve_sequence(model, baseline, model.default_initial(), model.default_target())
            .fidelity;
    const double f_diag =
        evolve_sequence(model, baseline, model.default_initial(), model.default_target(),
                        ErrorSpec{0.005, 0.005})
            .fidelity;
    CHECK(std::abs(f_diag - f0) <= 0.05);
}

TEST_CASE("landscapes are deterministic and anchored at the unperturbed fidelity") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::calibrated(model);
    const OpssSequence baseline = baseline_sequence(model, map);
    const GridSpec grid = GridSpec::symmetric(0.005, 7, 0.005, 7);

    const FidelityLandscape a = scan_landscape(model, map, baseline, grid);
    const FidelityLandscape b = scan_landscape(model, map, baseline, grid);
    CHECK((a.fidelity - b.fidelity).cwiseAbs().maxCoeff() == 0.0);  // bit-identical

    const double unperturbed =
        evolve_sequence(model, baseline, model.default_initial(), model.default_target())
            .fidelity;
    CHECK(a.fidelity(3, 3) == unperturbed);
    CHECK(a.fidelity.minCoeff() >= 0.0);
    CHECK(a.fidelity.maxCoeff() <= 1.0);
}

TEST_CASE("zero-size grids produce an empty landscape") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::perturbative(model);
    const OpssSequence seq = OpssSequence::physical({1.0 / 3.0}, 10.0);
    const FidelityLandscape land =
        scan_landscape(model, map, seq, GridSpec::symmetric(0.01, 0, 0.01, 0));
    CHECK(land.fidelity.size() == 0);
}

TEST_CASE("high-fidelity radius: analytic cases and threshold monotonicity") {
    FidelityLandscape land;
    land.eps1 = Eigen::VectorXd::LinSpaced(5, -0.01, 0.01);
    land.eps2 = Eigen::VectorXd::LinSpaced(5, -0.01, 0.01);

    SUBCASE("uniform pass reaches the grid corner") {
        land.fidelity = Eigen::MatrixXd::Constant(5, 5, 1.0);
        CHECK(high_fidelity_radius(land, 0.8) ==
              doctest::Approx(std::hypot(0.01, 0.01)).epsilon(1e-12));
    }
    SUBCASE("uniform fail returns zero") {
        land.fidelity = Eigen::MatrixXd::Constant(5, 5, 0.0);
        CHECK(high_fidelity_radius(land, 0.8) == 0.0);
    }
    SUBCASE("radius equals the nearest failing distance") {
        land.fidelity = Eigen::MatrixXd::Constant(5, 5, 1.0);
        land.fidelity(0, 0) = 0.1;  // corner
        CHECK(high_fidelity_radius(land, 0.8) ==
              doctest::Approx(std::hypot(0.01, 0.01)).epsilon(1e-12));
        land.fidelity(2, 3) = 0.1;  // one step along eps2
        CHECK(high_fidelity_radius(land, 0.8) == doctest::Approx(0.005).epsilon(1e-12));
    }
    SUBCASE("monotone non-increasing in the threshold") {
        Rng rng(13);
        land.fidelity.resize(5, 5);
        for (int i = 0; i < 5; ++i) {
            for (int j = 0; j < 5; ++j) land.fidelity(i, j) = rng.uniform();
        }
        land.fidelity(2, 2) = 1.0;
        double previous = high_fidelity_radius(land, 0.05);
        for (double threshold = 0.1; threshold <= 1.0; threshold += 0.05) {
            const double r = high_fidelity_radius(land, threshold);
            CHECK(r <= previous + 1e-15);
            previous = r;
        }
    }
    SUBCASE("off-center grids are rejected") {
        land.eps1 = Eigen::VectorXd::LinSpaced(4, 0.001, 0.01);
        land.eps2 = Eigen::VectorXd::LinSpaced(4, 0.001, 0.01);
        land.fidelity = Eigen::MatrixXd::Constant(4, 4, 1.0);
        CHECK_THROWS_AS(high_fidelity_radius(land, 0.8), std::invalid_argument);
    }
}

TEST_CASE("window statistics bound every sample and handle degenerate centers") {
    const Model model = Model::three_photon({1.0, 1.0 / 3.0, 0.06});
    const TwoLevelMap map = TwoLevelMap::calibrated(model);
    const OpssSequence baseline = baseline_sequence(model, map);

    SUBCASE("center 0 is the ideal fidelity") {
        const WindowStats stats =
            window_stats(model, map, baseline, ErrorAxis::control, 0.0, 11);
        const double f0 =
            evolve_sequence(model, baseline, model.default_initial(), model.default_target())
                .fidelity;
        CHECK(stats.mean == f0);
        CHECK(stats.min == f0);
        CHECK(stats.max == f0);
    }
    SUBCASE("min <= mean <= max and all within [0, 1]") {
        for (const double center : {0.001, -0.001, 0.005}) {
            const WindowStats stats =
                window_stats(model, map, baseline, ErrorAxis::primary, center, 21);
            CHECK(stats.min <= stats.mean);
            CHECK(stats.mean <= stats.max);
            CHECK(stats.min >= 0.0);
            CHECK(stats.max <= 1.0);
        }
    }
    SUBCASE("effective engine tracks the full model closely here") {
        const WindowStats full =
            window_stats(model, map, baseline, ErrorAxis::control, 0.001, 11);
        const WindowStats eff = window_stats(model, map, baseline, ErrorAxis::control, 0.001, 11,
                                             EvalEngine::effective);
        CHECK(std::abs(full.mean - eff.mean) <= 0.06);
    }
}
