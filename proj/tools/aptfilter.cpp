// aptfilter: command-line scenario runner
//
//   aptfilter design|propagate|lindblad|ensemble --config scenario.json [--out dir]
//   aptfilter tomography fit (--config scenario.json | --data datasets.csv)
//   aptfilter --figure fig2c [--out dir] [--seed n]
//   aptfilter validate (--config scenario.json [--command name] | --figure id)
//
// Exit status: 0 success, 1 usage or I/O failure, 2 schema violation,
// 3 numerical failure (the module error name is printed).

#include "aptf/cli/config.hpp"
#include "aptf/cli/manifest.hpp"
#include "aptf/cli/scenario.hpp"
#include "aptf/error.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

#ifndef APTF_VERSION
#define APTF_VERSION "0.0.0"
#endif

using namespace aptf::cli;

namespace {

struct Job {
    Command command;
    std::string label;
    nlohmann::json doc;
    std::filesystem::path base;
};

void print(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) std::cerr << format(d) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Anti-parity-time entanglement filter: design, propagation, master equation, tomography, ensembles"};
    app.set_version_flag("--version", std::string("aptfilter ") + APTF_VERSION);
    app.fallthrough();

    std::string config_path, figure, out_dir, data_csv, validate_command;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "Scenario JSON file");
    app.add_option("--figure", figure, "Figure preset")->check(CLI::IsMember(figure_ids()));
    auto* seed_opt = app.add_option("--seed", seed, "Ensemble seed (overrides ensemble.seed)");
    app.add_option("--out", out_dir, "Output directory (overrides output.directory)");

    auto* design = app.add_subcommand("design", "Lanczos coupling design (and anchor decay with a run section)");
    auto* propagate = app.add_subcommand("propagate", "Post-selected port dynamics (full, effective, lindblad or pt model)");
    auto* lindblad = app.add_subcommand("lindblad", "Master-equation purity and entanglement metrics");
    auto* ensemble = app.add_subcommand("ensemble", "Disorder ensemble of attractor fidelity");
    auto* tomography = app.add_subcommand("tomography", "Phase retrieval");
    auto* fit = tomography->add_subcommand("fit", "Fit (phi1, phi2) to coupler and quarter-phase data");
    fit->add_option("--data", data_csv, "Datasets CSV (config,p20,p02,p11)")->check(CLI::ExistingFile);
    tomography->require_subcommand(1);
    auto* validate = app.add_subcommand("validate", "Schema and physics checks without running");
    validate->add_option("--command", validate_command, "Check the sections this command requires")
        ->check(CLI::IsMember({"design", "propagate", "lindblad", "tomography", "ensemble"}));
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::optional<Command> command;
    if (*design) command = Command::design;
    if (*propagate) command = Command::propagate;
    if (*lindblad) command = Command::lindblad;
    if (*ensemble) command = Command::ensemble;
    if (*tomography) command = Command::tomography;

    try {
        std::vector<Job> jobs;
        if (!figure.empty()) {
            if (!config_path.empty()) throw std::invalid_argument("--figure and --config are exclusive");
            for (auto& j : figure_preset(figure)) {
                if (command && j.command != *command) {
                    throw std::invalid_argument("figure " + figure + " runs '" + command_name(j.command) + "', not '" +
                                                command_name(*command) + "'");
                }
                jobs.push_back({j.command, j.label, std::move(j.config), {}});
            }
        } else if (!config_path.empty() || !data_csv.empty()) {
            nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_json(config_path);
            const auto base = config_path.empty() ? std::filesystem::path{} : std::filesystem::path(config_path).parent_path();
            if (!data_csv.empty()) {
                if (doc.is_object()) doc["tomography"]["data_csv"] = std::filesystem::absolute(data_csv).string();
            }
            std::optional<Command> c = command;
            if (*validate && !validate_command.empty()) c = parse_command(validate_command);
            jobs.push_back({c.value_or(Command::design), c ? command_name(*c) : "scenario", std::move(doc), base});
            if (*validate && !c) {
                // Only the sections present are checked.
                const auto diags = validate_config(jobs[0].doc, std::nullopt, base);
                print(diags);
                if (diags.empty()) std::cout << "ok: no diagnostics\n";
                const bool bad = std::any_of(diags.begin(), diags.end(), [](const auto& d) { return d.level == Diagnostic::Level::error; });
                return bad ? 2 : 0;
            }
        } else {
            std::cerr << app.help();
            return 1;
        }

        if (*validate) {
            bool bad = false;
            std::size_t count = 0;
            for (const auto& j : jobs) {
                const auto diags = validate_config(j.doc, j.command, j.base);
                for (const auto& d : diags) {
                    std::cerr << j.label << ": " << format(d) << '\n';
                    bad = bad || d.level == Diagnostic::Level::error;
                }
                count += diags.size();
            }
            if (count == 0) std::cout << "ok: no diagnostics\n";
            return bad ? 2 : 0;
        }
        if (figure.empty() && !command) {
            std::cerr << "a subcommand is required with --config\n";
            return 1;
        }

        std::vector<ScenarioConfig> configs;
        for (const auto& j : jobs) {
            auto diags = validate_config(j.doc, j.command, j.base);
            for (const auto& d : diags) {
                if (d.level == Diagnostic::Level::warning) std::cerr << j.label << ": " << format(d) << '\n';
            }
            configs.push_back(parse_config(j.doc, j.command, j.base));
        }

        OutputSet out(std::string("aptfilter ") + APTF_VERSION,
                      figure.empty() ? std::string(command_name(*command)) : "figure " + figure);
        RunOptions options;
        if (seed_opt->count()) options.seed = seed;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            for (const auto& w : run_scenario(jobs[i].command, configs[i], jobs[i].label, out, options)) {
                std::cerr << jobs[i].label << ": warning: " << w << '\n';
            }
        }
        const std::filesystem::path dir = out_dir.empty() ? configs.front().output.directory : std::filesystem::path(out_dir);
        out.commit(dir);
        for (const auto& [name, content] : out.files()) std::cout << (dir / name).string() << '\n';
        std::cout << (dir / "manifest.json").string() << '\n';
        return 0;
    } catch (const SchemaError& e) {
        print(e.diagnostics());
        return 2;
    } catch (const aptf::Error& e) {
        std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
