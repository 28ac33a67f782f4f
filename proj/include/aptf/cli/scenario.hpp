// scenario.hpp: subcommand runners
//
// Each runner reads a parsed ScenarioConfig and adds its CSV/JSON outputs to
// an OutputSet under names derived from `label`:
//   design      <label>.csv (n,J_n,spacing_n) and, with a run section,
//               <label>_decay.csv (z,intensity,reference)
//   propagate   <label>.csv (z,P_0..P_N,success_probability,fidelity_to_attractor)
//   lindblad    <label>.csv (z,purity,participation_ratio,renyi_2,fidelity_to_attractor,sector_trace)
//   tomography  <label>_report.json, <label>_state.csv (N,k,re,im), <label>_landscape.csv (phi1,phi2,mse)
//   ensemble    <label>.csv (z,mean_fidelity,std_fidelity,min,max), optional <label>_trials.csv

#pragma once

#include "aptf/cli/config.hpp"
#include "aptf/cli/manifest.hpp"
#include "aptf/fock.hpp"
#include "aptf/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aptf::cli {

struct RunOptions {
    std::optional<std::uint64_t> seed;  // overrides ensemble.seed
};

[[nodiscard]] lattice::AptLattice build_lattice(const LatticeSection& s);

/// Pure input state. Throws std::invalid_argument for mixed inputs.
[[nodiscard]] fock::TwoModeNState input_state(const InputSection& s);
/// Density matrix with n_max = photon_number.
[[nodiscard]] lindblad::DensityMatrix input_density(const InputSection& s);

/// Returns warnings for the user; numerical failures propagate as aptf::Error.
std::vector<std::string> run_scenario(Command command, const ScenarioConfig& config, const std::string& label,
                                      OutputSet& out, const RunOptions& options = {});

}  // namespace aptf::cli
