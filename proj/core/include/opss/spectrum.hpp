// spectrum.hpp — eigensystems, ratio scans, and avoided-crossing location

#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "opss/models.hpp"

namespace opss {

struct Eigensystem {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // orthonormal columns
};

// max |H - H^dag| / max(1, max |H|)
double hermiticity_defect(const Eigen::MatrixXcd& h);

// Throws ContractError when the Hermiticity defect exceeds 1e-12.
Eigensystem diagonalize(const Eigen::MatrixXcd& h);

struct SpectrumSlice {
    double ratio = 0.0;           // omega_c / reference frequency
    Eigen::VectorXd eigenvalues;  // ascending
    double selected_gap = 0.0;    // E[pair.second] - E[pair.first]
};

struct RatioRange {
    double lo = 0.0;
    double hi = 0.0;
    int points = 201;
};

// Scan defaults matching the two models' crossings.
RatioRange default_ratio_range(ModelKind kind);
std::pair<int, int> default_tracked_pair(ModelKind kind);

// Gap between the tracked (index-ordered) eigenvalue pair across the ratio
// grid; keep_levels limits how many eigenvalues each slice retains (0 = all).
std::vector<SpectrumSlice> spectrum_scan(const Model& model, const RatioRange& range,
                                         std::pair<int, int> tracked, int keep_levels = 0);

struct CrossingResult {
    double ratio = 0.0;  // gap-minimizing omega_c / omega_ref
    double gap = 0.0;
    std::pair<int, int> tracked;
};

// Grid scan followed by golden-section refinement of the tracked gap.
// Throws NoCrossingError when the minimum sits on the bracket boundary or the
// refined gap collapses to an exact degeneracy (a real crossing, not an
// avoided one).
CrossingResult find_avoided_crossing(const Model& model, const RatioRange& range,
                                     std::pair<int, int> tracked, double ratio_rel_tol = 1e-9);

} // namespace opss
