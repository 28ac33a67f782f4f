#include "aptf/robustness.hpp"

#include "aptf/linalg.hpp"
#include "aptf/propagate.hpp"
#include "aptf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace aptf::robustness {

void PerturbationSpec::validate() const {
    if (!(relative_amplitude >= 0.0)) throw std::invalid_argument("PerturbationSpec: relative_amplitude must be >= 0");
    if (!(segment_length > 0.0)) throw std::invalid_argument("PerturbationSpec: segment_length must be > 0");
    if (n_trials < 1) throw std::invalid_argument("PerturbationSpec: n_trials must be >= 1");
}

namespace {

void check_grid(const std::vector<double>& z) {
    if (z.empty()) throw std::invalid_argument("z grid is empty");
    if (z.front() < 0.0) throw std::invalid_argument("z grid must start at z >= 0");
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (!(z[i] > z[i - 1])) throw std::invalid_argument("z grid must be strictly ascending");
    }
}

double draw(rng::SplitMix64& gen, const PerturbationSpec& spec) {
    const double r = spec.relative_amplitude;
    if (spec.distribution == Distribution::uniform) return gen.uniform(-r, r);
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - gen.uniform();
    const double u2 = gen.uniform();
    return r * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double port_fidelity(const CMatrix& transfer, const fock::TwoModeNState& input, const fock::TwoModeNState& target) {
    return fock::fidelity_to(propagate::postselect_two_ports(transfer, input).state, target);
}

std::vector<double> perturbed_trace(const lattice::AptLattice& lat, const fock::TwoModeNState& input,
                                    const fock::TwoModeNState& target, const PerturbationSpec& spec,
                                    const std::vector<double>& z_grid, std::uint64_t trial) {
    auto gen = rng::SplitMix64::stream(spec.seed, trial);
    const int m = lat.modes();
    CMatrix total = CMatrix::Identity(m, m);
    double z = 0.0;
    std::size_t next = 0;
    std::vector<double> out(z_grid.size());
    for (int segment = 0; next < z_grid.size(); ++segment) {
        lattice::AptLattice seg = lat;
        for (Eigen::Index b = 0; b < seg.chain.couplings.size(); ++b) seg.chain.couplings(b) *= 1.0 + draw(gen, spec);
        const linalg::HermitianExp step(seg.hamiltonian());
        const double seg_end = (segment + 1) * spec.segment_length;
        while (next < z_grid.size() && z_grid[next] <= seg_end) {
            total = step.at(z_grid[next] - z) * total;
            z = z_grid[next];
            out[next] = port_fidelity(total, input, target);
            ++next;
        }
        if (next < z_grid.size()) {
            total = step.at(seg_end - z) * total;
            z = seg_end;
        }
    }
    return out;
}

}  // namespace

EnsembleResult run_ensemble(const lattice::AptLattice& lat, const fock::TwoModeNState& input,
                            const PerturbationSpec& spec, const std::vector<double>& z_grid) {
    spec.validate();
    check_grid(z_grid);
    if (spec.target != Target::chain_couplings) throw std::invalid_argument("run_ensemble: target must be chain_couplings");
    const auto target = fock::attractor_state(input.n_photons());
    const auto nz = static_cast<Eigen::Index>(z_grid.size());

    EnsembleResult res;
    res.z_grid = z_grid;
    res.fidelity.resize(spec.n_trials, nz);

    const propagate::LatticePropagator control(lat.hamiltonian());
    for (Eigen::Index j = 0; j < nz; ++j) {
        res.fidelity(0, j) = port_fidelity(control.at(z_grid[static_cast<std::size_t>(j)]).matrix(), input, target);
    }

    const int trials = spec.n_trials;
    int workers = spec.threads > 0 ? spec.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::max(1, std::min(workers, trials - 1));
    auto work = [&](int first) {
        for (int t = first; t < trials; t += workers) {
            const auto tr = perturbed_trace(lat, input, target, spec, z_grid, static_cast<std::uint64_t>(t));
            for (Eigen::Index j = 0; j < nz; ++j) res.fidelity(t, j) = tr[static_cast<std::size_t>(j)];
        }
    };
    if (workers == 1) {
        work(1);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, 1 + w);
        for (auto& th : pool) th.join();
    }

    for (Eigen::Index j = 0; j < nz; ++j) {
        const auto col = res.fidelity.col(j);
        const double mean = col.mean();
        res.mean.push_back(mean);
        res.stddev.push_back(std::sqrt((col.array() - mean).square().mean()));
        res.min.push_back(col.minCoeff());
        res.max.push_back(col.maxCoeff());
    }
    return res;
}

DfsResult dfs_check(const lattice::AptLattice& lat, const fock::TwoModeNState& state) {
    const int n = state.n_photons();
    const int m = n + 2;  // occupations 0..n+1 so a_1^dag acts without truncation
    CMatrix a = CMatrix::Zero(m, m);
    for (int k = 1; k < m; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    const CMatrix id = CMatrix::Identity(m, m);
    auto kron3 = [](const CMatrix& x, const CMatrix& y, const CMatrix& z) { return linalg::kron(linalg::kron(x, y), z); };
    const CMatrix al = kron3(a, id, id);
    const CMatrix ar = kron3(id, a, id);
    const CMatrix a1 = kron3(id, id, a);
    const CMatrix hop = lat.j_left * al + lat.j_right * ar;  // sum_X J_X a_X
    const CMatrix h_int = hop * a1.adjoint() + a1 * hop.adjoint();

    CVector psi = CVector::Zero(m * m * m);
    for (int k = 0; k <= n; ++k) psi(((n - k) * m + k) * m) = state[k];  // |n-k, k, 0>
    const CVector h_psi = h_int * psi;
    return {std::abs(psi.dot(h_psi)), h_psi.norm()};
}

std::vector<double> self_heal(const lattice::AptLattice& lat, const PerturbationSpec& kick, double z_kick,
                              const std::vector<double>& z_grid) {
    check_grid(z_grid);
    if (z_kick < z_grid.front() || z_kick > z_grid.back()) throw std::invalid_argument("self_heal: z_kick outside z grid");
    if (kick.target == Target::chain_couplings) throw std::invalid_argument("self_heal: kick target must be a system kick");
    const linalg::HermitianExp u(lat.hamiltonian());
    const auto target = fock::attractor_state(1);
    CVector psi0 = CVector::Zero(lat.modes());
    psi0(0) = target[0];
    psi0(1) = target[1];

    CVector kicked = u.at(z_kick) * psi0;
    if (kick.target == Target::system_amplitude_kick) {
        kicked(0) *= 1.0 + kick.relative_amplitude;
    } else {
        kicked(1) *= std::polar(1.0, kick.relative_amplitude);
    }
    kicked.normalize();

    std::vector<double> out;
    out.reserve(z_grid.size());
    for (double z : z_grid) {
        const CVector v = z < z_kick ? CVector(u.at(z) * psi0) : CVector(u.at(z - z_kick) * kicked);
        const fock::TwoModeNState ports(CVector(v.head(2)));
        out.push_back(fock::fidelity_to(ports.normalized(), target));
    }
    return out;
}

}  // namespace aptf::robustness
