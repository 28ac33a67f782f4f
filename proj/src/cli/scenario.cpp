#include "aptf/cli/scenario.hpp"

#include "aptf/cli/csv.hpp"
#include "aptf/effective.hpp"
#include "aptf/linalg.hpp"
#include "aptf/propagate.hpp"

#include "json.hpp"

#include <sstream>

namespace aptf::cli {

namespace {

lattice::BathSpec bath(const LatticeSection& s) {
    lattice::BathSpec b;
    b.half_bandwidth = s.bandwidth;
    b.half_levels = s.half_levels;
    b.gamma = s.gamma;
    return b;
}

// Anchor plus n_sites - 1 bonds, from the override table or the Lanczos design.
lattice::CouplingChain design(const LatticeSection& s, int n_couplings) {
    if (s.table_override.empty()) return lattice::design_chain(bath(s), n_couplings);
    if (static_cast<int>(s.table_override.size()) < n_couplings) {
        throw std::invalid_argument("table_override has fewer than " + std::to_string(n_couplings) + " couplings");
    }
    RVector j(n_couplings);
    for (int i = 0; i < n_couplings; ++i) j(i) = s.table_override[static_cast<std::size_t>(i)];
    return lattice::CouplingChain(RVector::Zero(n_couplings + 1), j);
}

std::vector<std::string> header_with_probs(int n) {
    std::vector<std::string> h = {"z"};
    for (int k = 0; k <= n; ++k) h.push_back("P_" + std::to_string(k));
    h.emplace_back("success_probability");
    h.emplace_back("fidelity_to_attractor");
    return h;
}

void add_prob_row(CsvWriter& csv, double z, const std::vector<double>& p, double success, double fidelity) {
    std::vector<double> row = {z};
    row.insert(row.end(), p.begin(), p.end());
    row.push_back(success);
    row.push_back(fidelity);
    csv.row(row);
}

std::vector<std::string> run_design(const ScenarioConfig& cfg, const std::string& label, OutputSet& out) {
    const auto& s = *cfg.lattice;
    std::vector<std::string> warnings;
    const int rows = s.table_override.empty() ? s.design_couplings
                                              : std::min<int>(s.design_couplings, static_cast<int>(s.table_override.size()));
    const auto chain = design(s, rows);
    CsvWriter csv({"n", "J_n", "spacing_n"}, 6);
    for (int n = 0; n < rows; ++n) {
        const double j = chain.couplings(n);
        const auto d = lattice::coupling_to_spacing(j);
        if (d.extrapolated) warnings.push_back("J_" + std::to_string(n) + " lies outside the spacing calibration range");
        csv.row({static_cast<double>(n), j, d.value});
    }
    out.add(label + ".csv", csv.str());

    if (cfg.run) {
        const linalg::HermitianExp u(design(s, s.chain_length).hamiltonian());
        CsvWriter decay({"z", "intensity", "reference"}, cfg.output.precision);
        for (double z : cfg.run->grid()) decay.row({z, std::norm(u.at(z)(0, 0)), std::exp(-2.0 * s.gamma * z)});
        out.add(label + "_decay.csv", decay.str());
    }
    return warnings;
}

std::vector<std::string> run_propagate(const ScenarioConfig& cfg, const std::string& label, OutputSet& out) {
    const auto& in = *cfg.input;
    const auto& run = *cfg.run;
    const int n = in.photon_number;
    const double gamma = cfg.lattice->gamma;
    const auto target = fock::attractor_state(n);
    CsvWriter csv(header_with_probs(n), cfg.output.precision);
    const auto z_grid = run.grid();

    switch (run.model) {
        case Model::full: {
            const auto lat = build_lattice(*cfg.lattice);
            const propagate::LatticePropagator prop(lat.hamiltonian());
            const auto psi = input_state(in);
            const bool fock_input = in.occupation && n <= propagate::AmplitudeOptions{}.max_photons;
            for (double z : z_grid) {
                const auto r = fock_input ? propagate::postselect_two_ports(
                                                prop.at(z), fock::PhotonConfig::two_port(n, (*in.occupation)[1], lat.modes()), n)
                                          : propagate::postselect_two_ports(prop.port_block(z), psi);
                add_prob_row(csv, z, r.state.probabilities(), r.success_probability, fock::fidelity_to(r.state, target));
            }
            break;
        }
        case Model::effective: {
            const auto h = effective::build_effective(gamma, n);
            const auto psi = input_state(in);
            for (double z : z_grid) {
                const auto r = effective::evolve_effective(h, psi, z);
                add_prob_row(csv, z, r.state.probabilities(), r.success_probability, fock::fidelity_to(r.state, target));
            }
            break;
        }
        case Model::lindblad: {
            const auto l = lindblad::build_liouvillian(gamma, n, run.jumps);
            const auto rho0 = input_density(in);
            for (double z : z_grid) {
                const auto blk = lindblad::postselect_block(lindblad::evolve_density(l, rho0, z), n);
                std::vector<double> p(static_cast<std::size_t>(n + 1));
                for (int k = 0; k <= n; ++k) p[static_cast<std::size_t>(k)] = blk.matrix(k, k).real();
                add_prob_row(csv, z, p, blk.sector_trace, lindblad::fidelity(blk, target));
            }
            break;
        }
        case Model::pt: {
            const double kappa = run.pt_kappa.value_or(2.0 * gamma);
            const auto psi = input_state(in);
            for (double z : z_grid) {
                const auto r = propagate::pt_coupler_evolve(gamma, kappa, z, psi);
                add_prob_row(csv, z, r.state.probabilities(), r.success_probability, fock::fidelity_to(r.state, target));
            }
            break;
        }
    }
    out.add(label + ".csv", csv.str());
    return {};
}

std::vector<std::string> run_lindblad(const ScenarioConfig& cfg, const std::string& label, OutputSet& out) {
    const int n = cfg.input->photon_number;
    const auto l = lindblad::build_liouvillian(cfg.lattice->gamma, n, cfg.run->jumps);
    const auto rho0 = input_density(*cfg.input);
    const auto target = fock::attractor_state(n);
    CsvWriter csv({"z", "purity", "participation_ratio", "renyi_2", "fidelity_to_attractor", "sector_trace"},
                  cfg.output.precision);
    for (double z : cfg.run->grid()) {
        const auto blk = lindblad::postselect_block(lindblad::evolve_density(l, rho0, z), n);
        const CMatrix red = lindblad::partial_trace(blk, Port::left);
        csv.row({z, lindblad::purity(blk.matrix), lindblad::participation_ratio(red), lindblad::renyi_entropy(red),
                 lindblad::fidelity(blk, target), blk.sector_trace});
    }
    out.add(label + ".csv", csv.str());
    return {};
}

std::vector<std::string> run_tomography(const ScenarioConfig& cfg, const std::string& label, OutputSet& out) {
    using namespace tomography;
    const auto& t = *cfg.tomography;
    std::vector<std::string> warnings;
    FitOptions opt;
    opt.grid = t.grid;
    opt.threads = t.threads;
    const auto est = fit_phases(t.datasets, opt);
    if (!est.unique) {
        warnings.push_back("phase fit is not unique: " + std::to_string(est.basins.size()) +
                           " basins fit equally well; the state file uses the first");
    }

    // Magnitudes from a bare measurement when available, else from the parameterization.
    Probabilities3 mag{0.25, 0.25, 0.5};
    std::string source = "parameterization";
    for (const auto& d : t.datasets) {
        if (d.config == Config::bare) {
            mag = d.probs;
            source = "bare";
        }
    }
    const double total = mag.sum();
    const fock::TwoModeNState psi{cplx(std::sqrt(mag.p20 / total)), std::polar(std::sqrt(mag.p11 / total), est.phi2),
                                  std::polar(std::sqrt(mag.p02 / total), est.phi1)};

    nlohmann::ordered_json report;
    report["phi1"] = est.phi1;
    report["phi2"] = est.phi2;
    report["mse"] = est.mse;
    report["unique"] = est.unique;
    report["forward_consistent"] = forward_consistent(est, t.datasets);
    report["magnitudes_source"] = source;
    report["attractor_fidelity"] = fock::fidelity_to(psi, fock::attractor_state(2));
    report["basins"] = nlohmann::ordered_json::array();
    for (const auto& b : est.basins) report["basins"].push_back({{"phi1", b.phi1}, {"phi2", b.phi2}, {"mse", b.mse}});
    out.add(label + "_report.json", report.dump(2) + "\n");

    std::ostringstream state;
    state << "N,k,re,im\n";
    fock::write_state_rows(state, psi);
    out.add(label + "_state.csv", state.str());

    if (t.landscape_grid > 0) {
        const RMatrix land = mse_landscape(t.datasets, t.landscape_grid, t.threads);
        const double h = 2.0 * kPi / t.landscape_grid;
        CsvWriter csv({"phi1", "phi2", "mse"}, cfg.output.precision);
        for (int i = 0; i < t.landscape_grid; ++i) {
            for (int j = 0; j < t.landscape_grid; ++j) csv.row({i * h, j * h, land(i, j)});
        }
        out.add(label + "_landscape.csv", csv.str());
    }
    return warnings;
}

std::vector<std::string> run_ensemble(const ScenarioConfig& cfg, const std::string& label, OutputSet& out,
                                      const RunOptions& options) {
    EnsembleSection ens = cfg.ensemble.value_or(EnsembleSection{});
    if (options.seed) ens.spec.seed = *options.seed;
    out.set_seed(ens.spec.seed);
    const auto lat = build_lattice(*cfg.lattice);
    const auto res = robustness::run_ensemble(lat, input_state(*cfg.input), ens.spec, cfg.run->grid());
    CsvWriter csv({"z", "mean_fidelity", "std_fidelity", "min", "max"}, cfg.output.precision);
    for (std::size_t j = 0; j < res.z_grid.size(); ++j) {
        csv.row({res.z_grid[j], res.mean[j], res.stddev[j], res.min[j], res.max[j]});
    }
    out.add(label + ".csv", csv.str());
    if (ens.dump_trials) {
        CsvWriter trials({"trial", "z", "fidelity"}, cfg.output.precision);
        for (Eigen::Index t = 0; t < res.fidelity.rows(); ++t) {
            for (std::size_t j = 0; j < res.z_grid.size(); ++j) {
                trials.row({static_cast<double>(t), res.z_grid[j], res.fidelity(t, static_cast<Eigen::Index>(j))});
            }
        }
        out.add(label + "_trials.csv", trials.str());
    }
    return {};
}

}  // namespace

lattice::AptLattice build_lattice(const LatticeSection& s) {
    return lattice::AptLattice::from_design(design(s, s.chain_length), s.chain_length, s.j_left, s.j_right, s.delta);
}

fock::TwoModeNState input_state(const InputSection& s) {
    const int n = s.photon_number;
    if (s.occupation) return fock::TwoModeNState::basis(n, (*s.occupation)[1]);
    switch (s.preset) {
        case Preset::attractor: return fock::attractor_state(n);
        case Preset::symmetric: {
            // (a_L^dag + a_R^dag)^N |0> / sqrt(2^N N!)
            CVector c(n + 1);
            for (int k = 0; k <= n; ++k) c(k) = std::sqrt(fock::binomial(n, k) / std::pow(2.0, n));
            return fock::TwoModeNState(c);
        }
        default: break;
    }
    throw std::invalid_argument("input is a mixed state; use the lindblad model");
}

lindblad::DensityMatrix input_density(const InputSection& s) {
    const int n = s.photon_number;
    if (s.density) return lindblad::DensityMatrix(n, *s.density);
    if (s.preset == Preset::mix_11_20 || s.preset == Preset::mix_20_02) {
        const auto a = s.preset == Preset::mix_11_20 ? fock::TwoModeNState::basis(2, 1) : fock::TwoModeNState::basis(2, 0);
        return lindblad::dephased_mixture(a, fock::TwoModeNState::basis(2, s.preset == Preset::mix_11_20 ? 0 : 2), n);
    }
    return lindblad::DensityMatrix::from_state(input_state(s), n);
}

std::vector<std::string> run_scenario(Command command, const ScenarioConfig& config, const std::string& label,
                                      OutputSet& out, const RunOptions& options) {
    switch (command) {
        case Command::design: return run_design(config, label, out);
        case Command::propagate: return run_propagate(config, label, out);
        case Command::lindblad: return run_lindblad(config, label, out);
        case Command::tomography: return run_tomography(config, label, out);
        case Command::ensemble: return run_ensemble(config, label, out, options);
    }
    return {};
}

}  // namespace aptf::cli
