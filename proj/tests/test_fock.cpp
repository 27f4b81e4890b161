#include "doctest.h"

#include "opss/errors.hpp"
#include "opss/fock.hpp"

using namespace opss;

TEST_CASE("ladder operator matches the textbook matrix at dim 2") {
    const Eigen::MatrixXcd a = ladder_operator(2);
    CHECK(a(0, 0) == std::complex<double>(0.0));
    CHECK(a(0, 1) == std::complex<double>(1.0));
    CHECK(a(1, 0) == std::complex<double>(0.0));
    CHECK(a(1, 1) == std::complex<double>(0.0));
}

TEST_CASE("a|3> = sqrt(3) |2> at dim 4") {
    const Eigen::MatrixXcd a = ladder_operator(4);
    Eigen::VectorXcd three = Eigen::VectorXcd::Zero(4);
    three[3] = 1.0;
    const Eigen::VectorXcd lowered = a * three;
    CHECK(std::abs(lowered[2] - std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(lowered[0]) == 0.0);
    CHECK(std::abs(lowered[1]) == 0.0);
    CHECK(std::abs(lowered[3]) == 0.0);
}

TEST_CASE("number operator is diag(0, 1, 2, 3)") {
    const Eigen::MatrixXcd n = number_operator(4);
    for (int m = 0; m < 4; ++m) {
        CHECK(std::abs(n(m, m) - static_cast<double>(m)) < 1e-14);
        for (int k = 0; k < 4; ++k) {
            if (k != m) CHECK(std::abs(n(m, k)) < 1e-14);
        }
    }
}

TEST_CASE("ladder operator rejects dim < 2") {
    CHECK_THROWS_AS(ladder_operator(1), TruncationError);
    CHECK_THROWS_AS(ladder_operator(0), TruncationError);
}

TEST_CASE("kron follows the row-major convention") {
    Eigen::MatrixXcd a(2, 2), b(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    b << 0.0, 1.0, 1.0, 0.0;
    const Eigen::MatrixXcd k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(std::abs(k(0, 1) - std::complex<double>(1.0)) < 1e-15);  // a(0,0) b(0,1)
    CHECK(std::abs(k(0, 3) - std::complex<double>(2.0)) < 1e-15);  // a(0,1) b(0,1)
    CHECK(std::abs(k(2, 1) - std::complex<double>(3.0)) < 1e-15);  // a(1,0) b(0,1)
}
