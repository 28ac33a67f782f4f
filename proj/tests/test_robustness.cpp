#include "doctest.h"

#include "aptf/propagate.hpp"
#include "aptf/robustness.hpp"

using namespace aptf;
using namespace aptf::robustness;
using fock::TwoModeNState;

namespace {

const lattice::AptLattice& lat() {
    static const lattice::AptLattice l = lattice::default_apt_lattice();
    return l;
}

std::vector<double> grid(double stop, int n) {
    std::vector<double> z;
    for (int i = 0; i < n; ++i) z.push_back(stop * i / (n - 1));
    return z;
}

}  // namespace

TEST_CASE("zero disorder reproduces the control") {
    PerturbationSpec spec;
    spec.relative_amplitude = 0.0;
    spec.n_trials = 4;
    const auto z = grid(10.0, 21);
    const auto r = run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, z);
    for (int t = 1; t < 4; ++t) {
        for (Eigen::Index j = 0; j < r.fidelity.cols(); ++j) CHECK(std::abs(r.fidelity(t, j) - r.fidelity(0, j)) < 1e-10);
    }
    CHECK(r.stddev.back() < 1e-10);
}

TEST_CASE("ensembles are deterministic across thread counts") {
    PerturbationSpec spec;
    spec.n_trials = 6;
    spec.seed = 42;
    const auto z = grid(10.0, 11);
    spec.threads = 1;
    const auto a = run_ensemble(lat(), TwoModeNState::basis(2, 1), spec, z);
    spec.threads = 3;
    const auto b = run_ensemble(lat(), TwoModeNState::basis(2, 1), spec, z);
    CHECK((a.fidelity - b.fidelity).norm() == 0.0);
    spec.seed = 43;
    const auto c = run_ensemble(lat(), TwoModeNState::basis(2, 1), spec, z);
    CHECK((a.fidelity.bottomRows(5) - c.fidelity.bottomRows(5)).norm() > 0.0);
    CHECK((a.fidelity.row(0) - c.fidelity.row(0)).norm() == 0.0);
    for (std::size_t j = 0; j < z.size(); ++j) {
        CHECK(a.min[j] <= a.mean[j]);
        CHECK(a.mean[j] <= a.max[j]);
    }
}

TEST_CASE("ten percent disorder keeps the attractor") {
    PerturbationSpec spec;
    spec.n_trials = 20;
    spec.seed = 1;
    const auto r = run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, {10.0});
    CHECK(r.mean[0] >= 0.95);
    spec.distribution = Distribution::gaussian;
    const auto g = run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, {10.0});
    CHECK(g.mean[0] >= 0.9);
}

TEST_CASE("spec and grid validation") {
    PerturbationSpec spec;
    spec.n_trials = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.segment_length = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    CHECK_THROWS_AS((void)run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, {}), std::invalid_argument);
    CHECK_THROWS_AS((void)run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, {2.0, 1.0}), std::invalid_argument);
    spec.target = Target::system_phase_kick;
    CHECK_THROWS_AS((void)run_ensemble(lat(), TwoModeNState::basis(1, 0), spec, {1.0}), std::invalid_argument);
}

TEST_CASE("dark-state check") {
    for (int n = 1; n <= 3; ++n) {
        const auto d = dfs_check(lat(), fock::attractor_state(n));
        CHECK(d.expectation < 1e-12);
        CHECK(d.leakage_norm < 1e-12);
    }
    // A single photon in the symmetric mode couples with strength sqrt2 J0.
    const TwoModeNState sym{cplx(1 / std::sqrt(2.0)), cplx(1 / std::sqrt(2.0))};
    const auto s = dfs_check(lat(), sym);
    CHECK(s.expectation < 1e-12);
    CHECK(s.leakage_norm == doctest::Approx(std::sqrt(2.0) * lat().j_left).epsilon(1e-12));
}

TEST_CASE("self-healing after a kick") {
    const auto z = grid(20.0, 81);
    for (auto target : {Target::system_amplitude_kick, Target::system_phase_kick}) {
        PerturbationSpec kick;
        kick.target = target;
        kick.relative_amplitude = 0.5;
        const auto f = self_heal(lat(), kick, 5.0, z);
        CHECK(f.front() == doctest::Approx(1.0));
        double dip = 1.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (z[i] >= 5.0 && z[i] <= 6.0) dip = std::min(dip, f[i]);
        }
        CHECK(dip < 0.99);
        CHECK(f.back() > 0.99);
    }
    PerturbationSpec bad;
    CHECK_THROWS_AS((void)self_heal(lat(), bad, 5.0, z), std::invalid_argument);
    bad.target = Target::system_phase_kick;
    CHECK_THROWS_AS((void)self_heal(lat(), bad, 30.0, z), std::invalid_argument);
}
