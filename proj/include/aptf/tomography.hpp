// tomography.hpp: interferometric phase retrieval for two-port states
//
// Two-photon states are parameterized as
//   psi(phi1, phi2) = (|20> + e^{i phi1} |02>) / 2 + e^{i phi2} |11> / sqrt2,
// so the attractor is (0, pi). Measurement configurations are the bare
// output, a balanced coupler, and a pi/4 right-port phase followed by the
// coupler.
//
// The six coupler/quarter-phase probabilities are invariant under
// (phi1, phi2) -> (phi1, phi1 - phi2), so a noiseless fit has two zero-MSE
// basins unless 2 phi2 = phi1 (mod 2 pi). Both are reported.

#pragma once

#include "aptf/lindblad.hpp"
#include "aptf/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aptf::tomography {

enum class Config { bare, coupler, coupler_after_quarter_phase };

[[nodiscard]] const char* config_name(Config c) noexcept;
/// Accepts the names returned by config_name. Throws std::invalid_argument.
[[nodiscard]] Config parse_config(const std::string& name);

struct Probabilities3 {
    double p20 = 0.0;
    double p02 = 0.0;
    double p11 = 0.0;

    [[nodiscard]] double sum() const noexcept { return p20 + p02 + p11; }
};

struct TomographyDataset {
    Config config;
    Probabilities3 probs;

    /// Throws std::invalid_argument on negative entries or |sum - 1| > 0.02.
    TomographyDataset(Config config, Probabilities3 probs);
};

struct Basin {
    double phi1;
    double phi2;
    double mse;
};

struct PhaseEstimate {
    double phi1 = 0.0;  // [0, 2 pi)
    double phi2 = 0.0;  // [0, 2 pi)
    double mse = 0.0;
    bool unique = false;
    std::vector<Basin> basins;  // ascending mse, best first
};

struct FitOptions {
    int grid = 720;
    /// Basins with mse <= basin_factor * min + basin_floor are reported.
    double basin_factor = 2.0;
    double basin_floor = 1e-12;
    int threads = 0;  // 0 = hardware concurrency
};

[[nodiscard]] fock::TwoModeNState parameterized_state(double phi1, double phi2);

[[nodiscard]] Probabilities3 forward_probs(double phi1, double phi2, Config config);

/// Sum of squared residuals over all datasets.
[[nodiscard]] double mse(double phi1, double phi2, const std::vector<TomographyDataset>& data);

/// Requires coupler and quarter-phase datasets. Never picks silently between
/// degenerate basins: `unique` is false when more than one is reported.
[[nodiscard]] PhaseEstimate fit_phases(const std::vector<TomographyDataset>& data, FitOptions options = {});

/// grid x grid mse values; entry (i, j) at phi1 = 2 pi i / grid, phi2 = 2 pi j / grid.
[[nodiscard]] RMatrix mse_landscape(const std::vector<TomographyDataset>& data, int grid = 720, int threads = 0);

/// True when every forward probability at the estimate lies within tol of the data.
[[nodiscard]] bool forward_consistent(const PhaseEstimate& estimate, const std::vector<TomographyDataset>& data,
                                      double tol = 0.06);

using PortPair = std::pair<double, double>;  // (P10, P01)

/// Single-photon state (|10> + e^{i phi}|01>)/sqrt2 through the same configs.
[[nodiscard]] PortPair forward_single(double phi, Config config);

/// One-dimensional fit of phi in [0, 2 pi). Throws AmbiguousFitError when the
/// supplied configurations admit more than one minimum.
[[nodiscard]] double fit_single_photon_phase(std::optional<PortPair> bare, std::optional<PortPair> coupler,
                                             std::optional<PortPair> quarter);

/// Projector onto sqrt(P20)|20> + e^{i phi2} sqrt(P11)|11> + e^{i phi1} sqrt(P02)|02>,
/// probabilities renormalized.
[[nodiscard]] lindblad::SectorDensity reconstruct_density(const Probabilities3& magnitudes, const PhaseEstimate& phases);
/// Single-photon analog over (|10>, |01>).
[[nodiscard]] lindblad::SectorDensity reconstruct_single(const PortPair& magnitudes, double phi);

enum class FidelityMode { as_printed, bhattacharyya };

/// as_printed: sum p q. bhattacharyya: (sum sqrt(p q))^2.
[[nodiscard]] double fidelity_diag(const std::vector<double>& p_expected, const std::vector<double>& p_measured,
                                   FidelityMode mode = FidelityMode::bhattacharyya);

/// Alternative parameterization ((|20> + e^{i phi1}|02>)/2 - e^{i phi2}|11>/sqrt2
/// up to global phase): phi2_main = phi2_alt + pi.
[[nodiscard]] std::pair<double, double> alternate_to_main(double phi1, double phi2);
[[nodiscard]] std::pair<double, double> main_to_alternate(double phi1, double phi2);

/// Wrap into [0, 2 pi).
[[nodiscard]] double wrap_phase(double phi);
/// Smallest |a - b| modulo 2 pi.
[[nodiscard]] double phase_distance(double a, double b);

}  // namespace aptf::tomography
