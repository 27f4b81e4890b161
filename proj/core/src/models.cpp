#include "opss/models.hpp"

#include <stdexcept>
#include <string>

#include "opss/errors.hpp"
#include "opss/fock.hpp"

namespace opss {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be strictly positive");
    }
}

Eigen::MatrixXcd sigma_z() {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
    s(0, 0) = -1.0;  // |g>
    s(1, 1) = 1.0;   // |e>
    return s;
}

Eigen::MatrixXcd sigma_x() {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
}

} // namespace

Eigen::MatrixXcd build_rabi_hamiltonian(const ThreePhotonParams& p, const FockTruncation& t) {
    require_positive(p.omega_a, "omega_a");
    require_positive(p.omega_c, "omega_c");
    if (p.lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    if (t.cavity_dim < 4 || t.second_dim != 2) {
        throw TruncationError("three-photon model needs cavity_dim >= 4 and second_dim == 2");
    }
    const int dc = t.cavity_dim;
    const Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
    const Eigen::MatrixXcd idc = Eigen::MatrixXcd::Identity(dc, dc);
    return 0.5 * p.omega_a * kron(sigma_z(), idc)
         + p.omega_c * kron(id2, number_operator(dc))
         + p.lambda * kron(sigma_x(), quadrature_operator(dc));
}

Eigen::MatrixXcd build_optomech_hamiltonian(const CasimirParams& p, const FockTruncation& t) {
    require_positive(p.omega_c, "omega_c");
    require_positive(p.omega_m, "omega_m");
    if (p.g < 0.0) throw std::invalid_argument("g must be non-negative");
    if (t.cavity_dim < 3 || t.second_dim < 4) {
        throw TruncationError("Casimir model needs cavity_dim >= 3 and second_dim >= 4");
    }
    const int dc = t.cavity_dim;
    const int dm = t.second_dim;
    const Eigen::MatrixXcd idc = Eigen::MatrixXcd::Identity(dc, dc);
    const Eigen::MatrixXcd idm = Eigen::MatrixXcd::Identity(dm, dm);
    const Eigen::MatrixXcd xc = quadrature_operator(dc);
    return p.omega_c * kron(number_operator(dc), idm)
         + p.omega_m * kron(idc, number_operator(dm))
         + p.g * kron(xc * xc, quadrature_operator(dm));
}

Model::Model(ModelKind kind, std::variant<ThreePhotonParams, CasimirParams> params, FockTruncation t)
    : kind_(kind), params_(std::move(params)), truncation_(t) {
    validate();
}

Model Model::three_photon(ThreePhotonParams p, FockTruncation t) {
    return Model(ModelKind::three_photon, p, t);
}

Model Model::casimir(CasimirParams p, FockTruncation t) {
    return Model(ModelKind::casimir, p, t);
}

void Model::validate() const {
    if (kind_ == ModelKind::three_photon) {
        const auto& p = std::get<ThreePhotonParams>(params_);
        require_positive(p.omega_a, "omega_a");
        require_positive(p.omega_c, "omega_c");
        if (p.lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
        if (truncation_.cavity_dim < 4 || truncation_.second_dim != 2) {
            throw TruncationError("three-photon model needs cavity_dim >= 4 and second_dim == 2");
        }
    } else {
        const auto& p = std::get<CasimirParams>(params_);
        require_positive(p.omega_c, "omega_c");
        require_positive(p.omega_m, "omega_m");
        if (p.g < 0.0) throw std::invalid_argument("g must be non-negative");
        if (truncation_.cavity_dim < 3 || truncation_.second_dim < 4) {
            throw TruncationError("Casimir model needs cavity_dim >= 3 and second_dim >= 4");
        }
    }
}

double Model::reference_frequency() const {
    return kind_ == ModelKind::three_photon ? std::get<ThreePhotonParams>(params_).omega_a
                                            : std::get<CasimirParams>(params_).omega_m;
}

double Model::nominal_control() const {
    return kind_ == ModelKind::three_photon ? std::get<ThreePhotonParams>(params_).omega_c
                                            : std::get<CasimirParams>(params_).omega_c;
}

double Model::bare_resonant_control() const {
    return kind_ == ModelKind::three_photon ? reference_frequency() / 3.0
                                            : 1.5 * reference_frequency();
}

double Model::coupling() const {
    return kind_ == ModelKind::three_photon ? std::get<ThreePhotonParams>(params_).lambda
                                            : std::get<CasimirParams>(params_).g;
}

const ThreePhotonParams& Model::three_photon_params() const {
    if (kind_ != ModelKind::three_photon) throw ContractError("not a three-photon model");
    return std::get<ThreePhotonParams>(params_);
}

const CasimirParams& Model::casimir_params() const {
    if (kind_ != ModelKind::casimir) throw ContractError("not a Casimir model");
    return std::get<CasimirParams>(params_);
}

Eigen::MatrixXcd Model::hamiltonian(double control_frequency) const {
    if (kind_ == ModelKind::three_photon) {
        ThreePhotonParams p = std::get<ThreePhotonParams>(params_);
        p.omega_c = control_frequency;
        return build_rabi_hamiltonian(p, truncation_);
    }
    CasimirParams p = std::get<CasimirParams>(params_);
    p.omega_c = control_frequency;
    return build_optomech_hamiltonian(p, truncation_);
}

int Model::index_of(int first, int second) const {
    if (kind_ == ModelKind::three_photon) {
        // first = qubit (0=g, 1=e), second = photon number
        if (first < 0 || first >= 2 || second < 0 || second >= truncation_.cavity_dim) {
            throw std::out_of_range("bare state outside truncated space");
        }
        return first * truncation_.cavity_dim + second;
    }
    // first = photons, second = phonons
    if (first < 0 || first >= truncation_.cavity_dim || second < 0 || second >= truncation_.second_dim) {
        throw std::out_of_range("bare state outside truncated space");
    }
    return first * truncation_.second_dim + second;
}

int Model::default_initial() const {
    return kind_ == ModelKind::three_photon ? index_of(1, 0) : index_of(2, 0);
}

int Model::default_target() const {
    return kind_ == ModelKind::three_photon ? index_of(0, 3) : index_of(0, 3);
}

std::string Model::state_label(int index) const {
    if (kind_ == ModelKind::three_photon) {
        const int q = index / truncation_.cavity_dim;
        const int n = index % truncation_.cavity_dim;
        return std::string(q == 0 ? "g," : "e,") + std::to_string(n);
    }
    const int nc = index / truncation_.second_dim;
    const int nm = index % truncation_.second_dim;
    return std::to_string(nc) + "," + std::to_string(nm);
}

Eigen::MatrixXcd Model::photon_quadrature() const {
    if (kind_ == ModelKind::three_photon) {
        return kron(Eigen::MatrixXcd::Identity(2, 2), quadrature_operator(truncation_.cavity_dim));
    }
    return kron(quadrature_operator(truncation_.cavity_dim),
                Eigen::MatrixXcd::Identity(truncation_.second_dim, truncation_.second_dim));
}

Eigen::MatrixXcd Model::second_quadrature() const {
    if (kind_ == ModelKind::three_photon) {
        Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(2, 2);
        sx(0, 1) = 1.0;
        sx(1, 0) = 1.0;
        return kron(sx, Eigen::MatrixXcd::Identity(truncation_.cavity_dim, truncation_.cavity_dim));
    }
    return kron(Eigen::MatrixXcd::Identity(truncation_.cavity_dim, truncation_.cavity_dim),
                quadrature_operator(truncation_.second_dim));
}

Model Model::with_truncation(FockTruncation t) const { return Model(kind_, params_, t); }

Model Model::with_primary_scaled(double factor) const {
    if (kind_ == ModelKind::three_photon) {
        ThreePhotonParams p = std::get<ThreePhotonParams>(params_);
        p.omega_a *= factor;
        return Model(kind_, p, truncation_);
    }
    CasimirParams p = std::get<CasimirParams>(params_);
    p.omega_m *= factor;
    return Model(kind_, p, truncation_);
}

std::string Model::tag() const {
    return kind_ == ModelKind::three_photon ? "three_photon" : "casimir";
}

std::vector<std::string> Model::parameter_warnings() const {
    std::vector<std::string> warnings;
    if (kind_ == ModelKind::three_photon) {
        const auto& p = std::get<ThreePhotonParams>(params_);
        if (p.lambda >= 0.2 * p.omega_a) {
            warnings.push_back("lambda >= 0.2 omega_a: outside the weak-coupling regime the "
                               "effective two-level reduction assumes");
        }
    } else {
        const auto& p = std::get<CasimirParams>(params_);
        if (p.g > 0.05 * p.omega_m) {
            warnings.push_back("g > 0.05 omega_m: outside the weak-coupling regime the "
                               "effective two-level reduction assumes");
        }
    }
    return warnings;
}

} // namespace opss
