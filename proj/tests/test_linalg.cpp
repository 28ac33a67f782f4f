#include "doctest.h"

#include "aptf/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace aptf;

TEST_CASE("expm matches Eigen's MatrixExponential") {
    for (int n : {1, 2, 5, 12}) {
        for (double scale : {1e-3, 0.5, 4.0, 40.0}) {
            CAPTURE(n);
            CAPTURE(scale);
            const CMatrix a = CMatrix::Random(n, n) * scale;
            const CMatrix ref = a.exp();
            const double rel = (linalg::expm(a) - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff());
            CHECK(rel < 1e-11);
        }
    }
}

TEST_CASE("expm handles a nilpotent (defective) matrix exactly") {
    CMatrix n = CMatrix::Zero(3, 3);
    n(0, 1) = 1.0;
    n(1, 2) = 1.0;
    const CMatrix e = linalg::expm(n * 2.0);
    CHECK(std::abs(e(0, 2) - 2.0) < 1e-14);  // (2N)^2 / 2
    CHECK(std::abs(e(0, 1) - 2.0) < 1e-14);
}

TEST_CASE("expm_scaled falls back on defective input") {
    CMatrix j(2, 2);
    j << 1.0, 1.0, 0.0, 1.0;
    const CMatrix ref = (j * cplx{0.0, 1.5}).exp();
    CHECK((linalg::expm_scaled(j, {0.0, 1.5}) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("HermitianExp is unitary and matches expm") {
    CMatrix h = CMatrix::Random(6, 6);
    h = linalg::hermitize(h);
    const linalg::HermitianExp u(h);
    const CMatrix uz = u.at(1.7);
    CHECK(linalg::is_unitary(uz));
    CHECK((uz - linalg::expm(kI * 1.7 * h)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(linalg::HermitianExp(CMatrix::Random(3, 3)), std::invalid_argument);
}

TEST_CASE("trace distance and kron") {
    CMatrix p = CMatrix::Zero(2, 2), q = CMatrix::Zero(2, 2);
    p(0, 0) = 1.0;
    q(1, 1) = 1.0;
    CHECK(linalg::trace_distance(p, q) == doctest::Approx(1.0));
    CHECK(linalg::trace_distance(p, p) == doctest::Approx(0.0));

    CMatrix a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    const CMatrix k = linalg::kron(a, b);
    CHECK(k(0, 1) == cplx(1.0));
    CHECK(k(2, 1) == cplx(3.0));
    CHECK(k(1, 2) == cplx(2.0));
    CHECK(k(2, 3) == cplx(4.0));
    CHECK(k(1, 3) == cplx(0.0));
}
