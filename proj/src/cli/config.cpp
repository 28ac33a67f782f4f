#include "aptf/cli/config.hpp"

#include "aptf/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace aptf::cli {

using nlohmann::json;

const char* command_name(Command c) noexcept {
    switch (c) {
        case Command::design: return "design";
        case Command::propagate: return "propagate";
        case Command::lindblad: return "lindblad";
        case Command::tomography: return "tomography";
        case Command::ensemble: return "ensemble";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (auto c : {Command::design, Command::propagate, Command::lindblad, Command::tomography, Command::ensemble}) {
        if (name == command_name(c)) return c;
    }
    throw std::invalid_argument("unknown command '" + name + "'");
}

std::vector<double> RunSection::grid() const {
    std::vector<double> z(static_cast<std::size_t>(z_steps));
    for (int i = 0; i < z_steps; ++i) z[static_cast<std::size_t>(i)] = z_start + (z_stop - z_start) * i / (z_steps - 1);
    return z;
}

std::string format(const Diagnostic& d) {
    return std::string(d.level == Diagnostic::Level::error ? "error" : "warning") + ": " + d.path + ": " + d.message;
}

namespace {

std::string join_errors(const std::vector<Diagnostic>& diags) {
    std::string s = "invalid scenario";
    for (const auto& d : diags) {
        if (d.level == Diagnostic::Level::error) s += "\n  " + d.path + ": " + d.message;
    }
    return s;
}

}  // namespace

SchemaError::SchemaError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_errors(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Walks a JSON document and records problems with their field paths.
class Reader {
public:
    explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

    void error(const std::string& path, const std::string& msg) { diags_.push_back({Diagnostic::Level::error, path, msg}); }
    void warn(const std::string& path, const std::string& msg) { diags_.push_back({Diagnostic::Level::warning, path, msg}); }

    const json* section(const json& doc, const std::string& key, bool required) {
        const auto it = doc.find(key);
        if (it == doc.end()) {
            if (required) error(key, "missing required section");
            return nullptr;
        }
        if (!it->is_object()) {
            error(key, "expected an object");
            return nullptr;
        }
        return &*it;
    }

    void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                error(path.empty() ? key : path + "." + key, "unknown key");
            }
        }
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key, bool required = false) {
        const auto* v = find(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number()) return bad(path, key, "expected a number");
        return v->get<double>();
    }

    std::optional<long long> integer(const json& obj, const std::string& path, const char* key, bool required = false) {
        const auto* v = find(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) return bad(path, key, "expected an integer");
        if (v->is_number_unsigned() && v->get<std::uint64_t>() > static_cast<std::uint64_t>(INT32_MAX)) {
            return bad(path, key, "integer out of range");
        }
        return v->get<long long>();
    }

    std::optional<std::uint64_t> unsigned64(const json& obj, const std::string& path, const char* key) {
        const auto* v = find(obj, path, key, false);
        if (!v) return std::nullopt;
        if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
            return bad(path, key, "expected a nonnegative integer");
        }
        return v->get<std::uint64_t>();
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const char* key, bool required = false) {
        const auto* v = find(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_string()) return bad(path, key, "expected a string");
        return v->get<std::string>();
    }

    std::optional<bool> boolean(const json& obj, const std::string& path, const char* key) {
        const auto* v = find(obj, path, key, false);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) return bad(path, key, "expected true or false");
        return v->get<bool>();
    }

    template <class T>
    std::optional<T> choice(const json& obj, const std::string& path, const char* key, const std::map<std::string, T>& options) {
        const auto s = string(obj, path, key);
        if (!s) return std::nullopt;
        const auto it = options.find(*s);
        if (it == options.end()) {
            std::string list;
            for (const auto& [name, value] : options) list += (list.empty() ? "" : ", ") + name;
            error(join(path, key), "expected one of " + list);
            return std::nullopt;
        }
        return it->second;
    }

    static std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

private:
    const json* find(const json& obj, const std::string& path, const char* key, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) error(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    std::nullopt_t bad(const std::string& path, const char* key, const std::string& msg) {
        error(join(path, key), msg);
        return std::nullopt;
    }

    std::vector<Diagnostic>& diags_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

void positive(Reader& r, const std::string& path, std::optional<double> v) {
    if (v && !(*v > 0.0)) r.error(path, "must be > 0 (got " + fmt_num(*v) + ")");
}

void read_lattice(Reader& r, const json& s, const std::filesystem::path& base, LatticeSection& out) {
    const std::string p = "lattice";
    r.reject_unknown(s, p, {"gamma", "bandwidth", "half_levels", "chain_length", "design_couplings", "table_override",
                            "j_left", "j_right", "delta"});
    if (auto v = r.number(s, p, "gamma", true)) { positive(r, "lattice.gamma", v); out.gamma = *v; }
    if (auto v = r.number(s, p, "bandwidth")) { positive(r, "lattice.bandwidth", v); out.bandwidth = *v; }
    if (auto v = r.integer(s, p, "half_levels")) {
        if (*v < 1) r.error("lattice.half_levels", "must be >= 1");
        out.half_levels = static_cast<int>(*v);
    }
    if (auto v = r.integer(s, p, "chain_length")) {
        if (*v < 1) r.error("lattice.chain_length", "must be >= 1");
        out.chain_length = static_cast<int>(*v);
    }
    if (auto v = r.integer(s, p, "design_couplings")) {
        if (*v < 1) r.error("lattice.design_couplings", "must be >= 1");
        out.design_couplings = static_cast<int>(*v);
    }
    const long long sites = 2LL * out.half_levels + 1;
    if (out.chain_length + 1 > sites) r.error("lattice.chain_length", "exceeds the 2 K + 1 bath levels");
    if (out.design_couplings + 1 > sites) r.error("lattice.design_couplings", "exceeds the 2 K + 1 bath levels");
    if (auto v = r.number(s, p, "j_left")) { positive(r, "lattice.j_left", v); out.j_left = *v; }
    if (auto v = r.number(s, p, "j_right")) { positive(r, "lattice.j_right", v); out.j_right = *v; }
    if (auto v = r.number(s, p, "delta")) out.delta = *v;

    const auto it = s.find("table_override");
    if (it == s.end()) return;
    const std::string tp = "lattice.table_override";
    if (it->is_array()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& e = (*it)[i];
            if (!e.is_number()) {
                r.error(tp + "[" + std::to_string(i) + "]", "expected a number");
                continue;
            }
            out.table_override.push_back(e.get<double>());
        }
    } else if (it->is_string()) {
        try {
            const auto table = read_csv(resolve(base, it->get<std::string>()));
            const auto col = table.column("J_n");
            for (const auto& row : table.rows) out.table_override.push_back(parse_number(row[col]));
        } catch (const std::exception& e) {
            r.error(tp, e.what());
            return;
        }
    } else {
        r.error(tp, "expected an array of couplings or a design CSV path");
        return;
    }
    for (std::size_t i = 0; i < out.table_override.size(); ++i) {
        if (!(out.table_override[i] > 0.0)) r.error(tp + "[" + std::to_string(i) + "]", "couplings must be > 0");
    }
    if (static_cast<int>(out.table_override.size()) < out.chain_length) {
        r.error(tp, "needs at least chain_length = " + std::to_string(out.chain_length) + " couplings (J_0..J_" +
                        std::to_string(out.chain_length - 1) + ")");
    }
}

std::optional<CMatrix> read_density(Reader& r, const std::filesystem::path& file, int n) {
    const std::string p = "input.density_csv";
    try {
        const auto t = read_csv(file);
        const int d = (n + 1) * (n + 1);
        CMatrix rho = CMatrix::Zero(d, d);
        const std::array<std::size_t, 6> cols = {t.column("n_l"), t.column("n_r"), t.column("n_l2"),
                                                 t.column("n_r2"), t.column("re"), t.column("im")};
        for (const auto& row : t.rows) {
            std::array<int, 4> idx{};
            for (std::size_t k = 0; k < 4; ++k) {
                const double v = parse_number(row[cols[k]]);
                if (v != std::floor(v) || v < 0 || v > n) throw std::invalid_argument("occupation out of range 0.." + std::to_string(n));
                idx[k] = static_cast<int>(v);
            }
            rho(idx[0] * (n + 1) + idx[1], idx[2] * (n + 1) + idx[3]) =
                cplx(parse_number(row[cols[4]]), parse_number(row[cols[5]]));
        }
        (void)lindblad::DensityMatrix(n, rho);
        return rho;
    } catch (const std::exception& e) {
        r.error(p, e.what());
        return std::nullopt;
    }
}

void read_input(Reader& r, const json& s, const std::filesystem::path& base, InputSection& out) {
    const std::string p = "input";
    r.reject_unknown(s, p, {"photon_number", "occupation", "preset", "density_csv"});
    if (auto v = r.integer(s, p, "photon_number", true)) {
        if (*v < 1) r.error("input.photon_number", "must be >= 1");
        out.photon_number = static_cast<int>(*v);
    }
    int sources = 0;
    if (const auto it = s.find("occupation"); it != s.end()) {
        ++sources;
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer() ||
            (*it)[0].get<long long>() < 0 || (*it)[1].get<long long>() < 0) {
            r.error("input.occupation", "expected [n_left, n_right] with nonnegative integers");
        } else {
            out.occupation = std::array<int, 2>{(*it)[0].get<int>(), (*it)[1].get<int>()};
            if ((*out.occupation)[0] + (*out.occupation)[1] != out.photon_number) {
                r.error("input.occupation", "occupations must sum to photon_number");
            }
        }
    }
    if (s.contains("preset")) {
        ++sources;
        if (auto v = r.choice<Preset>(s, p, "preset",
                                      {{"attractor", Preset::attractor}, {"symmetric", Preset::symmetric},
                                       {"mix_11_20", Preset::mix_11_20}, {"mix_20_02", Preset::mix_20_02}})) {
            out.preset = *v;
            if ((*v == Preset::mix_11_20 || *v == Preset::mix_20_02) && out.photon_number != 2) {
                r.error("input.preset", "mixture presets are two-photon states (photon_number = 2)");
            }
        }
    }
    if (s.contains("density_csv")) {
        ++sources;
        if (auto v = r.string(s, p, "density_csv"); v && out.photon_number >= 1) {
            out.density = read_density(r, resolve(base, *v), out.photon_number);
        }
    }
    if (sources != 1) r.error("input", "give exactly one of occupation, preset, density_csv");
}

void read_run(Reader& r, const json& s, RunSection& out) {
    const std::string p = "run";
    r.reject_unknown(s, p, {"model", "z_start", "z_stop", "z_steps", "jumps", "pt_kappa"});
    if (auto v = r.choice<Model>(s, p, "model",
                                 {{"full", Model::full}, {"effective", Model::effective}, {"lindblad", Model::lindblad},
                                  {"pt", Model::pt}})) {
        out.model = *v;
    }
    if (auto v = r.number(s, p, "z_start")) {
        if (*v < 0.0) r.error("run.z_start", "must be >= 0");
        out.z_start = *v;
    }
    if (auto v = r.number(s, p, "z_stop", true)) {
        out.z_stop = *v;
        if (!(out.z_stop > out.z_start)) r.error("run.z_stop", "must be > z_start");
    }
    if (auto v = r.integer(s, p, "z_steps", true)) {
        if (*v < 2 || *v > 1000000) r.error("run.z_steps", "must be in [2, 1000000]");
        out.z_steps = static_cast<int>(*v);
    }
    if (auto v = r.choice<lindblad::JumpModel>(
            s, p, "jumps", {{"independent", lindblad::JumpModel::independent}, {"collective", lindblad::JumpModel::collective}})) {
        out.jumps = *v;
    }
    if (auto v = r.number(s, p, "pt_kappa")) { positive(r, "run.pt_kappa", v); out.pt_kappa = *v; }
}

void read_tomography(Reader& r, const json& s, const std::filesystem::path& base, TomographySection& out) {
    const std::string p = "tomography";
    r.reject_unknown(s, p, {"datasets", "data_csv", "grid", "landscape_grid", "threads"});
    const std::map<std::string, tomography::Config> configs = {
        {"bare", tomography::Config::bare},
        {"coupler", tomography::Config::coupler},
        {"coupler_after_quarter_phase", tomography::Config::coupler_after_quarter_phase}};
    auto add = [&](const std::string& path, const std::string& name, double p20, double p02, double p11) {
        const auto it = configs.find(name);
        if (it == configs.end()) {
            r.error(path + ".config", "expected one of bare, coupler, coupler_after_quarter_phase");
            return;
        }
        try {
            out.datasets.emplace_back(it->second, tomography::Probabilities3{p20, p02, p11});
        } catch (const std::invalid_argument& e) {
            r.error(path, e.what());
        }
    };
    const bool inline_data = s.contains("datasets");
    const bool file_data = s.contains("data_csv");
    if (inline_data == file_data) r.error("tomography", "give exactly one of datasets, data_csv");
    if (inline_data) {
        const auto& arr = s["datasets"];
        if (!arr.is_array()) {
            r.error("tomography.datasets", "expected an array");
        } else {
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string ip = "tomography.datasets[" + std::to_string(i) + "]";
                if (!arr[i].is_object()) {
                    r.error(ip, "expected an object");
                    continue;
                }
                r.reject_unknown(arr[i], ip, {"config", "p20", "p02", "p11"});
                const auto c = r.string(arr[i], ip, "config", true);
                const auto a = r.number(arr[i], ip, "p20", true);
                const auto b = r.number(arr[i], ip, "p02", true);
                const auto d = r.number(arr[i], ip, "p11", true);
                if (c && a && b && d) add(ip, *c, *a, *b, *d);
            }
        }
    }
    if (file_data) {
        if (auto f = r.string(s, p, "data_csv")) {
            try {
                const auto t = read_csv(resolve(base, *f));
                const auto cc = t.column("config"), c20 = t.column("p20"), c02 = t.column("p02"), c11 = t.column("p11");
                for (std::size_t i = 0; i < t.rows.size(); ++i) {
                    const auto& row = t.rows[i];
                    add("tomography.data_csv[" + std::to_string(i) + "]", row[cc], parse_number(row[c20]),
                        parse_number(row[c02]), parse_number(row[c11]));
                }
            } catch (const std::exception& e) {
                r.error("tomography.data_csv", e.what());
            }
        }
    }
    if (auto v = r.integer(s, p, "grid")) {
        if (*v < 8) r.error("tomography.grid", "must be >= 8");
        out.grid = static_cast<int>(*v);
    }
    if (auto v = r.integer(s, p, "landscape_grid")) {
        if (*v != 0 && *v < 4) r.error("tomography.landscape_grid", "must be 0 (skip) or >= 4");
        out.landscape_grid = static_cast<int>(*v);
    }
    if (auto v = r.integer(s, p, "threads")) {
        if (*v < 0) r.error("tomography.threads", "must be >= 0");
        out.threads = static_cast<int>(*v);
    }
    const auto has = [&](tomography::Config c) {
        return std::any_of(out.datasets.begin(), out.datasets.end(), [c](const auto& d) { return d.config == c; });
    };
    if ((inline_data || file_data) &&
        (!has(tomography::Config::coupler) || !has(tomography::Config::coupler_after_quarter_phase))) {
        r.error("tomography", "coupler and coupler_after_quarter_phase datasets are both required");
    }
}

void read_ensemble(Reader& r, const json& s, EnsembleSection& out) {
    const std::string p = "ensemble";
    r.reject_unknown(s, p, {"trials", "relative_amplitude", "segment_length", "distribution", "seed", "dump_trials", "threads"});
    auto& spec = out.spec;
    if (auto v = r.integer(s, p, "trials")) {
        if (*v < 1) r.error("ensemble.trials", "must be >= 1");
        spec.n_trials = static_cast<int>(*v);
    }
    if (auto v = r.number(s, p, "relative_amplitude")) {
        if (*v < 0.0) r.error("ensemble.relative_amplitude", "must be >= 0");
        spec.relative_amplitude = *v;
    }
    if (auto v = r.number(s, p, "segment_length")) { positive(r, "ensemble.segment_length", v); spec.segment_length = *v; }
    if (auto v = r.choice<robustness::Distribution>(
            s, p, "distribution", {{"uniform", robustness::Distribution::uniform}, {"gaussian", robustness::Distribution::gaussian}})) {
        spec.distribution = *v;
    }
    if (auto v = r.unsigned64(s, p, "seed")) spec.seed = *v;
    if (auto v = r.boolean(s, p, "dump_trials")) out.dump_trials = *v;
    if (auto v = r.integer(s, p, "threads")) {
        if (*v < 0) r.error("ensemble.threads", "must be >= 0");
        spec.threads = static_cast<int>(*v);
    }
}

void read_output(Reader& r, const json& s, OutputSection& out) {
    const std::string p = "output";
    r.reject_unknown(s, p, {"directory", "precision"});
    if (auto v = r.string(s, p, "directory")) {
        if (v->empty()) r.error("output.directory", "must not be empty");
        out.directory = *v;
    }
    if (auto v = r.integer(s, p, "precision")) {
        if (*v < 1 || *v > 17) r.error("output.precision", "must be in [1, 17]");
        out.precision = static_cast<int>(*v);
    }
}

struct Requirements {
    bool lattice = false, input = false, run = false, tomography = false;
};

Requirements requirements(std::optional<Command> c) {
    if (!c) return {};
    switch (*c) {
        case Command::design: return {true, false, false, false};
        case Command::propagate:
        case Command::lindblad:
        case Command::ensemble: return {true, true, true, false};
        case Command::tomography: return {false, false, false, true};
    }
    return {};
}

ScenarioConfig collect(const json& doc, std::optional<Command> command, const std::filesystem::path& base,
                       std::vector<Diagnostic>& diags) {
    Reader r(diags);
    ScenarioConfig cfg;
    if (!doc.is_object()) {
        r.error("(root)", "expected a JSON object");
        return cfg;
    }
    r.reject_unknown(doc, "", {"lattice", "input", "run", "tomography", "ensemble", "output"});
    const auto req = requirements(command);
    if (const auto* s = r.section(doc, "lattice", req.lattice)) read_lattice(r, *s, base, cfg.lattice.emplace());
    if (const auto* s = r.section(doc, "input", req.input)) read_input(r, *s, base, cfg.input.emplace());
    if (const auto* s = r.section(doc, "run", req.run)) read_run(r, *s, cfg.run.emplace());
    if (const auto* s = r.section(doc, "tomography", req.tomography)) read_tomography(r, *s, base, cfg.tomography.emplace());
    if (const auto* s = r.section(doc, "ensemble", false)) read_ensemble(r, *s, cfg.ensemble.emplace());
    if (const auto* s = r.section(doc, "output", false)) read_output(r, *s, cfg.output);

    // Cross-section checks.
    const bool mixed = cfg.input && (cfg.input->density || cfg.input->preset == Preset::mix_11_20 ||
                                     cfg.input->preset == Preset::mix_20_02);
    const bool density_run =
        command == Command::lindblad || (command == Command::propagate && cfg.run && cfg.run->model == Model::lindblad);
    if (command == Command::ensemble && cfg.run && cfg.run->model != Model::full) {
        r.error("run.model", "ensembles run on the full lattice (model = full)");
    }
    if (mixed && command && !density_run) r.error("input", "mixed-state inputs need the lindblad model");
    if (cfg.input && command == Command::lindblad && cfg.input->photon_number > 4) {
        r.error("input.photon_number", "lindblad runs support photon_number <= 4");
    }
    if (cfg.input && cfg.run && cfg.run->model == Model::pt && cfg.input->photon_number > 2) {
        r.error("input.photon_number", "the pt model supports photon_number <= 2");
    }
    if (cfg.input && cfg.run && cfg.run->model == Model::lindblad && cfg.input->photon_number > 4) {
        r.error("input.photon_number", "the lindblad model supports photon_number <= 4");
    }
    if (cfg.lattice && cfg.run && cfg.run->z_steps >= 2 &&
        (command == Command::ensemble || (cfg.run->model == Model::full && command != Command::lindblad))) {
        // Leaked light crosses the chain at group velocity <= B and returns after ~2 M / B.
        const double revival = 2.0 * cfg.lattice->chain_length / cfg.lattice->bandwidth;
        if (cfg.run->z_stop > 0.5 * revival) {
            r.warn("lattice.chain_length", "finite-bath revival expected near z = " + fmt_num(revival) +
                                               " (2 M / B); z_stop = " + fmt_num(cfg.run->z_stop) +
                                               " is beyond half of it, lengthen the chain");
        }
    }
    return cfg;
}

}  // namespace

std::vector<Diagnostic> validate_config(const json& doc, std::optional<Command> command, const std::filesystem::path& base_dir) {
    std::vector<Diagnostic> diags;
    (void)collect(doc, command, base_dir, diags);
    return diags;
}

ScenarioConfig parse_config(const json& doc, Command command, const std::filesystem::path& base_dir) {
    std::vector<Diagnostic> diags;
    auto cfg = collect(doc, command, base_dir, diags);
    if (std::any_of(diags.begin(), diags.end(), [](const auto& d) { return d.level == Diagnostic::Level::error; })) {
        throw SchemaError(std::move(diags));
    }
    return cfg;
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError({{Diagnostic::Level::error, path.string(), "cannot open config file"}});
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError({{Diagnostic::Level::error, path.string(), std::string("invalid JSON: ") + e.what()}});
    }
}

// Figure presets. Desk-scale parameters are pinned here: K = 500, B = 4,
// Gamma = 0.25, 50 environment sites, 100 ensemble trials.
namespace {

json lattice_default(int chain_length = 50) {
    return {{"gamma", 0.25}, {"bandwidth", 4.0}, {"half_levels", 500}, {"chain_length", chain_length}};
}

json occupation(int nl, int nr) { return {{"photon_number", nl + nr}, {"occupation", {nl, nr}}}; }

json run(const char* model, double z_stop, int steps) {
    return {{"model", model}, {"z_start", 0.0}, {"z_stop", z_stop}, {"z_steps", steps}};
}

json scenario(json input, json run_section, int chain_length = 50) {
    return {{"lattice", lattice_default(chain_length)}, {"input", std::move(input)}, {"run", std::move(run_section)}};
}

json ensemble_section() {
    return {{"trials", 100}, {"relative_amplitude", 0.1}, {"segment_length", 0.5}, {"distribution", "uniform"}, {"seed", 0}};
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig2b", "fig2c", "fig3b", "fig3c", "fig4a",  "fig4b",
                                                 "figS2C", "figS3", "figS4B", "figS7", "figS9", "figS10"};
    return ids;
}

std::vector<FigureJob> figure_preset(const std::string& id) {
    using C = Command;
    if (id == "fig2b") {
        return {{C::propagate, "fig2b_in10", scenario(occupation(1, 0), run("full", 10.0, 201))},
                {C::propagate, "fig2b_in01", scenario(occupation(0, 1), run("full", 10.0, 201))}};
    }
    if (id == "fig2c") return {{C::propagate, "fig2c", scenario(occupation(1, 0), run("full", 10.0, 101))}};
    if (id == "fig3b") {
        return {{C::propagate, "fig3b_in20", scenario(occupation(2, 0), run("full", 10.0, 101))},
                {C::propagate, "fig3b_in02", scenario(occupation(0, 2), run("full", 10.0, 101))}};
    }
    if (id == "fig3c") return {{C::propagate, "fig3c", scenario(occupation(1, 1), run("full", 10.0, 101))}};
    if (id == "fig4a") {
        json s = scenario(occupation(2, 0), run("full", 10.0, 41));
        s["ensemble"] = ensemble_section();
        return {{C::ensemble, "fig4a", s}};
    }
    if (id == "fig4b") return {{C::propagate, "fig4b", scenario(occupation(2, 0), run("full", 10.0, 101))}};
    if (id == "figS2C") {
        return {{C::design, "figS2C", {{"lattice", lattice_default()}, {"run", run("full", 10.0, 101)}}}};
    }
    if (id == "figS3") {
        std::vector<FigureJob> jobs;
        for (int m : {25, 50, 75}) {
            jobs.push_back({C::propagate, "figS3_m" + std::to_string(m),
                            scenario({{"photon_number", 1}, {"occupation", {1, 0}}}, run("full", 60.0, 1201), m)});
        }
        return jobs;
    }
    if (id == "figS4B") {
        return {{C::propagate, "figS4B_apt", scenario(occupation(2, 0), run("effective", 30.0, 301))},
                {C::propagate, "figS4B_pt", scenario(occupation(2, 0), run("pt", 30.0, 301))}};
    }
    if (id == "figS7") {
        json t = {{"datasets",
                   {{{"config", "coupler"}, {"p20", 0.2578}, {"p02", 0.2633}, {"p11", 0.4789}},
                    {{"config", "coupler_after_quarter_phase"}, {"p20", 0.6737}, {"p02", 0.0816}, {"p11", 0.2447}}}},
                  {"grid", 720},
                  {"landscape_grid", 180}};
        return {{C::tomography, "figS7", {{"tomography", t}}}};
    }
    if (id == "figS9") {
        json a = scenario(occupation(1, 0), run("full", 10.0, 41));
        a["ensemble"] = ensemble_section();
        json b = scenario({{"photon_number", 1}, {"preset", "attractor"}}, run("full", 10.0, 41));
        b["ensemble"] = ensemble_section();
        return {{C::ensemble, "figS9_in10", a}, {C::ensemble, "figS9_attractor", b}};
    }
    if (id == "figS10") {
        auto lb = [](json input) {
            return json{{"lattice", {{"gamma", 0.25}}}, {"input", std::move(input)}, {"run", run("lindblad", 10.0, 101)}};
        };
        return {{C::lindblad, "figS10_mix_11_20", lb({{"photon_number", 2}, {"preset", "mix_11_20"}})},
                {C::lindblad, "figS10_mix_20_02", lb({{"photon_number", 2}, {"preset", "mix_20_02"}})},
                {C::lindblad, "figS10_in11", lb(occupation(1, 1))}};
    }
    throw std::invalid_argument("unknown figure '" + id + "'");
}

}  // namespace aptf::cli
