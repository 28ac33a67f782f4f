// robustness.hpp: disorder ensembles and dark-state checks
//
// Disorder is piecewise constant along z: every segment of length
// segment_length redraws each environment bond as J (1 + u). Trial t draws
// from rng::SplitMix64::stream(seed, t) in segment-major, bond-minor order, so
// results do not depend on thread scheduling. Trial 0 is the unperturbed
// control and uses the direct propagator.

#pragma once

#include "aptf/fock.hpp"
#include "aptf/lattice.hpp"
#include "aptf/types.hpp"

#include <cstdint>
#include <vector>

namespace aptf::robustness {

enum class Target { chain_couplings, system_amplitude_kick, system_phase_kick };
enum class Distribution { uniform, gaussian };

struct PerturbationSpec {
    double relative_amplitude = 0.10;  // uniform half-width, or Gaussian sigma
    double segment_length = 0.5;       // cm
    int n_trials = 100;
    std::uint64_t seed = 0;
    Target target = Target::chain_couplings;
    Distribution distribution = Distribution::uniform;
    int threads = 0;  // 0 = hardware concurrency

    /// Throws std::invalid_argument.
    void validate() const;
};

struct EnsembleResult {
    std::vector<double> z_grid;
    RMatrix fidelity;  // n_trials x z_grid.size()
    std::vector<double> mean;
    std::vector<double> stddev;  // population standard deviation
    std::vector<double> min;
    std::vector<double> max;
};

/// Post-selected fidelity to attractor_state(N) along z for every trial.
[[nodiscard]] EnsembleResult run_ensemble(const lattice::AptLattice& lat, const fock::TwoModeNState& input,
                                          const PerturbationSpec& spec, const std::vector<double>& z_grid);

struct DfsResult {
    double expectation;   // |<psi| H_int |psi>|
    double leakage_norm;  // ||H_int |psi>||
};

/// H_int = J_L (a_L a_1^dag + h.c.) + J_R (a_R a_1^dag + h.c.), a_1 the first
/// environment site, evaluated on |psi> (x) |0>_1 in a truncated three-mode
/// Fock space.
[[nodiscard]] DfsResult dfs_check(const lattice::AptLattice& lat, const fock::TwoModeNState& state);

/// Single-photon attractor propagated to z_kick, kicked on the system ports,
/// then propagated on. Amplitude kick scales the L amplitude by
/// (1 + relative_amplitude); phase kick multiplies R by
/// exp(i relative_amplitude). Returns fidelity to the attractor on z_grid.
[[nodiscard]] std::vector<double> self_heal(const lattice::AptLattice& lat, const PerturbationSpec& kick,
                                            double z_kick, const std::vector<double>& z_grid);

}  // namespace aptf::robustness
