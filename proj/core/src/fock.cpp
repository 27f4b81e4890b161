#include "opss/fock.hpp"

#include <cmath>
#include <string>

#include "opss/errors.hpp"

namespace opss {

Eigen::MatrixXcd ladder_operator(int dim) {
    if (dim < 2) {
        throw TruncationError("ladder_operator: dim must be >= 2, got " + std::to_string(dim));
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m + 1 < dim; ++m) {
        a(m, m + 1) = std::sqrt(static_cast<double>(m + 1));
    }
    return a;
}

Eigen::MatrixXcd number_operator(int dim) {
    const Eigen::MatrixXcd a = ladder_operator(dim);
    return a.adjoint() * a;
}

Eigen::MatrixXcd quadrature_operator(int dim) {
    const Eigen::MatrixXcd a = ladder_operator(dim);
    return a + a.adjoint();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

} // namespace opss
