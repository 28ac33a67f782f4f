#include "doctest.h"

#include "aptf/lattice.hpp"
#include "aptf/linalg.hpp"
#include "aptf/rng.hpp"
#include "oracles/oracle_values.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace aptf;
using namespace aptf::lattice;

namespace {

CMatrix random_hermitian(int n, std::uint64_t seed) {
    auto g = rng::SplitMix64::stream(seed, 0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g.uniform(-1, 1), g.uniform(-1, 1)};
    return linalg::hermitize(a);
}

RVector sorted_eigenvalues(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

}  // namespace

TEST_CASE("build_ww_star") {
    SUBCASE("unit coupling") {
        const CMatrix h = build_ww_star({1.0, 1, kPi});
        REQUIRE(h.rows() == 4);
        CHECK(h(0, 1).real() == doctest::Approx(1.0));
        CHECK(h(0, 3).real() == doctest::Approx(1.0));
        CHECK(h(1, 1).real() == doctest::Approx(-1.0));
        CHECK(h(2, 2).real() == doctest::Approx(0.0));
        CHECK(h(3, 3).real() == doctest::Approx(1.0));
        CHECK(linalg::is_hermitian(h));
    }
    SUBCASE("design bath") {
        const BathSpec spec{};
        CHECK(spec.level_coupling() == doctest::Approx(0.02523).epsilon(1e-3));
        CHECK(build_ww_star(spec).rows() == 1002);
    }
    SUBCASE("decoupled") {
        const CMatrix h = build_ww_star({4.0, 10, 0.0});
        CHECK(h.row(0).cwiseAbs().sum() == doctest::Approx(0.0));
    }
    CHECK_THROWS_AS((void)build_ww_star({-1.0, 10, 0.25}), std::invalid_argument);
}

TEST_CASE("lanczos on small matrices") {
    SUBCASE("diagonal input breaks down at step 2") {
        CMatrix h = CMatrix::Zero(2, 2);
        h(0, 0) = 1.0;
        h(1, 1) = -1.0;
        const auto r = lanczos_tridiagonalize(h, CVector::Unit(2, 0), 2);
        CHECK(r.chain.detunings(0) == doctest::Approx(1.0));
        CHECK(r.chain.detunings(1) == doctest::Approx(-1.0));
        CHECK(r.chain.couplings(0) == 0.0);
        REQUIRE(r.breakdown_steps.size() == 1);
        CHECK(r.breakdown_steps[0] == 1);
    }
    SUBCASE("already tridiagonal") {
        CMatrix h = CMatrix::Zero(2, 2);
        h(0, 1) = h(1, 0) = 1.0;
        const auto r = lanczos_tridiagonalize(h, CVector::Unit(2, 0), 2);
        CHECK(r.chain.detunings.cwiseAbs().maxCoeff() < 1e-15);
        CHECK(r.chain.couplings(0) == doctest::Approx(1.0));
    }
    SUBCASE("preconditions") {
        const CMatrix h = CMatrix::Identity(3, 3);
        CHECK_THROWS_AS((void)lanczos_tridiagonalize(h, CVector::Unit(3, 0), 4), std::invalid_argument);
        CHECK_THROWS_AS((void)lanczos_tridiagonalize(h, CVector::Ones(3), 2), std::invalid_argument);
    }
}

TEST_CASE("lanczos reorthogonalization and isospectrality") {
    const CMatrix h = random_hermitian(100, 7);
    const CVector v1 = CVector::Unit(100, 0);
    const auto full = lanczos_tridiagonalize(h, v1, 100);
    CHECK(full.orthogonality_drift < 1e-10);
    const RVector ev_in = sorted_eigenvalues(h);
    const RVector ev_out = sorted_eigenvalues(full.chain.hamiltonian());
    CHECK((ev_in - ev_out).cwiseAbs().maxCoeff() < 1e-8 * ev_in.cwiseAbs().maxCoeff());

    LanczosOptions plain;
    plain.reorthogonalize = false;
    const auto drift = lanczos_tridiagonalize(h, v1, 100, plain);
    // Without reorthogonalization the drift is reported, not fatal.
    CHECK(drift.orthogonality_drift > full.orthogonality_drift);
    MESSAGE("orthogonality drift without reorthogonalization: " << drift.orthogonality_drift);
}

TEST_CASE("complex Hermitian input gives real couplings and a consistent chain") {
    const CMatrix h = random_hermitian(30, 3);
    const auto r = lanczos_tridiagonalize(h, CVector::Unit(30, 0), 30);
    CHECK(r.orthogonality_drift < 1e-10);
    const RVector a = sorted_eigenvalues(h), b = sorted_eigenvalues(r.chain.hamiltonian());
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("design chain matches the independent oracle") {
    const CouplingChain chain = design_chain(BathSpec{}, 52);
    REQUIRE(chain.couplings.size() == 52);
    for (int n = 0; n < 52; ++n) {
        CAPTURE(n);
        CHECK(chain.couplings(n) == doctest::Approx(oracle::kDesignCouplings[static_cast<std::size_t>(n)]).epsilon(1e-10));
    }
    // C_0 = sqrt(2 Gamma B / pi) up to discretization.
    CHECK(chain.couplings(0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-3));
    // Symmetric spectrum: zero detunings along the chain.
    CHECK(chain.detunings.cwiseAbs().maxCoeff() < 1e-10);
    // All 52 entries lie within 0.003 of the reference design table.
    const auto& table = reference_couplings();
    REQUIRE(table.size() == 52);
    double worst = 0.0;
    for (int n = 0; n < 52; ++n) worst = std::max(worst, std::abs(chain.couplings(n) - table[static_cast<std::size_t>(n)]));
    CHECK(worst < 0.003);
}

TEST_CASE("chain couplings approach B/2") {
    const CouplingChain chain = design_chain(BathSpec{}, 120);
    // The discrete bath pulls deep couplings slightly below B/2 (1.988 at n = 119).
    CHECK(std::abs(chain.couplings(119) - 2.0) < 0.02);
    for (int n = 2; n < 120; ++n) CHECK(chain.couplings(n) <= chain.couplings(n - 1) + 1e-9);
}

TEST_CASE("build_apt_lattice topology") {
    SUBCASE("one-site chain") {
        const CouplingChain c(RVector::Zero(1), RVector(0));
        const CMatrix h = build_apt_lattice(c, 1.0, 1.0);
        REQUIRE(h.rows() == 3);
        CHECK(h(0, 2) == cplx(1.0));
        CHECK(h(1, 2) == cplx(1.0));
        CHECK(h(0, 1) == cplx(0.0));
    }
    SUBCASE("default lattice") {
        const AptLattice lat = default_apt_lattice();
        CHECK(lat.modes() == 52);
        const CMatrix h = lat.hamiltonian();
        CHECK(h(0, 1) == cplx(0.0));
        CHECK(h(0, 2).real() == doctest::Approx(oracle::kDesignCouplings[0]));
        CHECK(h(2, 3).real() == doctest::Approx(oracle::kDesignCouplings[1]));
        CHECK(h(50, 51).real() == doctest::Approx(oracle::kDesignCouplings[49]));
    }
    SUBCASE("dark state is an exact eigenvector with eigenvalue delta") {
        AptLattice lat = default_apt_lattice();
        lat.delta = 0.3;
        CVector dark = CVector::Zero(lat.modes());
        dark(0) = 1 / std::sqrt(2.0);
        dark(1) = -1 / std::sqrt(2.0);
        CHECK((lat.hamiltonian() * dark - 0.3 * dark).norm() < 1e-14);
    }
    CHECK_THROWS_AS((void)build_apt_lattice(CouplingChain(RVector::Zero(1), RVector(0)), 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("coupling/spacing calibration") {
    CHECK(coupling_to_spacing(0.8).value == doctest::Approx(20.0));
    CHECK(coupling_to_spacing(2.3).value == doctest::Approx(14.3));
    const auto model = SpacingModel::calibrated();
    CHECK(model.decay_length == doctest::Approx(5.397).epsilon(1e-3));
    CHECK(model.amplitude == doctest::Approx(32.6).epsilon(2e-3));
    CHECK(coupling_to_spacing(2.0).value == doctest::Approx(15.05).epsilon(1e-3));
    CHECK(!coupling_to_spacing(2.0).extrapolated);
    CHECK(coupling_to_spacing(20.0).extrapolated);
    CHECK(coupling_to_spacing(0.05).extrapolated);
    CHECK(spacing_to_coupling(coupling_to_spacing(1.234).value).value == doctest::Approx(1.234));
    CHECK_THROWS_AS((void)coupling_to_spacing(0.0), std::invalid_argument);
}
