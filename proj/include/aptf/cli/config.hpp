// config.hpp: scenario schema and figure presets
//
// A scenario is a JSON document with the sections lattice, input, run,
// tomography, ensemble and output. Unknown keys are rejected; every problem is
// reported with its field path (e.g. "lattice.gamma") before any computation.

#pragma once

#include "aptf/lindblad.hpp"
#include "aptf/robustness.hpp"
#include "aptf/tomography.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aptf::cli {

enum class Command { design, propagate, lindblad, tomography, ensemble };

[[nodiscard]] const char* command_name(Command c) noexcept;
/// Throws std::invalid_argument.
[[nodiscard]] Command parse_command(const std::string& name);

struct LatticeSection {
    double gamma = 0.25;              // cm^-1, required
    double bandwidth = 4.0;           // half-bandwidth B, cm^-1
    int half_levels = 500;            // K
    int chain_length = 50;            // environment sites
    int design_couplings = 52;        // rows of the design CSV
    /// J_0, J_1, ... replacing the Lanczos design; inline array or a design CSV path.
    std::vector<double> table_override;
    std::optional<double> j_left;
    std::optional<double> j_right;
    double delta = 0.0;
};

enum class Preset { none, attractor, symmetric, mix_11_20, mix_20_02 };

struct InputSection {
    int photon_number = 0;  // required
    std::optional<std::array<int, 2>> occupation;
    Preset preset = Preset::none;
    /// From input.density_csv (rows n_l, n_r, n_l', n_r', re, im); n_max = photon_number.
    std::optional<CMatrix> density;
};

enum class Model { full, effective, lindblad, pt };

struct RunSection {
    Model model = Model::full;
    double z_start = 0.0;
    double z_stop = 0.0;  // required
    int z_steps = 0;      // grid points including both ends, required
    lindblad::JumpModel jumps = lindblad::JumpModel::independent;
    std::optional<double> pt_kappa;  // defaults to 2 gamma

    [[nodiscard]] std::vector<double> grid() const;
};

struct TomographySection {
    /// Inline under tomography.datasets or read from tomography.data_csv
    /// (header config,p20,p02,p11).
    std::vector<tomography::TomographyDataset> datasets;
    int grid = 720;
    int landscape_grid = 180;
    int threads = 0;
};

struct EnsembleSection {
    robustness::PerturbationSpec spec;
    bool dump_trials = false;
};

struct OutputSection {
    std::filesystem::path directory = "out";
    int precision = 15;
};

struct ScenarioConfig {
    std::optional<LatticeSection> lattice;
    std::optional<InputSection> input;
    std::optional<RunSection> run;
    std::optional<TomographySection> tomography;
    std::optional<EnsembleSection> ensemble;
    OutputSection output;
};

struct Diagnostic {
    enum class Level { error, warning };
    Level level;
    std::string path;
    std::string message;
};

[[nodiscard]] std::string format(const Diagnostic& d);

class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(std::vector<Diagnostic> diagnostics);
    [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Schema and physics checks. Required sections are those of `command`; with
/// no command only the sections present are checked. Relative file paths are
/// resolved against base_dir. Never throws on bad content.
[[nodiscard]] std::vector<Diagnostic> validate_config(const nlohmann::json& doc, std::optional<Command> command,
                                                      const std::filesystem::path& base_dir = {});

/// Parse for `command`. Throws SchemaError listing every error-level diagnostic.
[[nodiscard]] ScenarioConfig parse_config(const nlohmann::json& doc, Command command,
                                          const std::filesystem::path& base_dir = {});

/// Throws SchemaError when the file is missing or is not valid JSON.
[[nodiscard]] nlohmann::json load_json(const std::filesystem::path& path);

struct FigureJob {
    Command command;
    std::string label;  // output file stem
    nlohmann::json config;
};

[[nodiscard]] const std::vector<std::string>& figure_ids();
/// Throws std::invalid_argument for an unknown id.
[[nodiscard]] std::vector<FigureJob> figure_preset(const std::string& id);

}  // namespace aptf::cli
