// fock.hpp — truncated bosonic operators and tensor-product helpers

#pragma once

#include <Eigen/Dense>

namespace opss {

// Annihilation operator on a dim-level Fock space: a[m, m+1] = sqrt(m+1).
// Throws TruncationError for dim < 2.
Eigen::MatrixXcd ladder_operator(int dim);

// a^dag a, diagonal (0, 1, ..., dim-1).
Eigen::MatrixXcd number_operator(int dim);

// Quadrature a + a^dag.
Eigen::MatrixXcd quadrature_operator(int dim);

// Kronecker product, row-major convention: (A kron B)[i*p+k, j*q+l] = A(i,j) B(k,l).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace opss
