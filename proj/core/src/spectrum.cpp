#include "opss/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opss/errors.hpp"
#include "opss/parallel.hpp"

namespace opss {

double hermiticity_defect(const Eigen::MatrixXcd& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Eigensystem diagonalize(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw ContractError("diagonalize: matrix must be square and non-empty");
    }
    if (hermiticity_defect(h) > 1e-12) {
        throw ContractError("diagonalize: input is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("diagonalize: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

RatioRange default_ratio_range(ModelKind kind) {
    if (kind == ModelKind::three_photon) return {0.30, 0.38, 161};
    return {1.49995, 1.50008, 131};
}

std::pair<int, int> default_tracked_pair(ModelKind kind) {
    if (kind == ModelKind::three_photon) return {3, 4};
    return {5, 6};
}

namespace {

void check_range(const Model& model, const RatioRange& range, std::pair<int, int> tracked) {
    if (!(range.lo < range.hi) || range.points < 3) {
        throw std::invalid_argument("ratio range must satisfy lo < hi with at least 3 points");
    }
    if (tracked.first < 0 || tracked.second <= tracked.first || tracked.second >= model.dim()) {
        throw std::invalid_argument("tracked eigenstate pair outside the spectrum");
    }
}

double tracked_gap(const Model& model, double ratio, std::pair<int, int> tracked) {
    const Eigen::VectorXd evals =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
            model.hamiltonian(ratio * model.reference_frequency()), Eigen::EigenvaluesOnly)
            .eigenvalues();
    return evals[tracked.second] - evals[tracked.first];
}

} // namespace

std::vector<SpectrumSlice> spectrum_scan(const Model& model, const RatioRange& range,
                                         std::pair<int, int> tracked, int keep_levels) {
    check_range(model, range, tracked);
    const int n = range.points;
    std::vector<SpectrumSlice> slices(static_cast<std::size_t>(n));
    const int keep = keep_levels > 0 ? std::min(keep_levels, model.dim()) : model.dim();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double ratio = range.lo + (range.hi - range.lo) * static_cast<double>(i) / (n - 1);
        const Eigen::VectorXd evals =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
                model.hamiltonian(ratio * model.reference_frequency()), Eigen::EigenvaluesOnly)
                .eigenvalues();
        slices[i].ratio = ratio;
        slices[i].eigenvalues = evals.head(keep);
        slices[i].selected_gap = evals[tracked.second] - evals[tracked.first];
    });
    return slices;
}

CrossingResult find_avoided_crossing(const Model& model, const RatioRange& range,
                                     std::pair<int, int> tracked, double ratio_rel_tol) {
    const auto slices = spectrum_scan(model, range, tracked, 1);
    std::size_t k = 0;
    for (std::size_t i = 1; i < slices.size(); ++i) {
        if (slices[i].selected_gap < slices[k].selected_gap) k = i;
    }
    if (k == 0 || k + 1 == slices.size()) {
        throw NoCrossingError("no interior gap minimum for pair (" +
                              std::to_string(tracked.first) + "," +
                              std::to_string(tracked.second) + ") in ratio range [" +
                              std::to_string(range.lo) + ", " + std::to_string(range.hi) + "]");
    }

    // Golden-section refinement on the bracketing grid cell pair.
    double a = slices[k - 1].ratio;
    double b = slices[k + 1].ratio;
    const double bracket_gap = std::min(slices[k - 1].selected_gap, slices[k + 1].selected_gap);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = tracked_gap(model, c, tracked);
    double fd = tracked_gap(model, d, tracked);
    while ((b - a) > ratio_rel_tol * std::max(1.0, std::abs(a))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = tracked_gap(model, c, tracked);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = tracked_gap(model, d, tracked);
        }
    }
    const double ratio = 0.5 * (a + b);
    const double gap = tracked_gap(model, ratio, tracked);

    // An avoided crossing keeps a finite gap at the bottom of the V; an exact
    // (uncoupled) crossing refines to essentially zero relative to the flanks.
    if (gap < 1e-3 * bracket_gap) {
        throw NoCrossingError("tracked pair meets in an exact degeneracy (no avoided gap); "
                              "refined gap " + std::to_string(gap));
    }
    return {ratio, gap, tracked};
}

} // namespace opss
