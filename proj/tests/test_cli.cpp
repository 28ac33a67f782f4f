#include "doctest.h"

#include "aptf/cli/config.hpp"
#include "aptf/cli/csv.hpp"
#include "aptf/cli/manifest.hpp"
#include "aptf/cli/scenario.hpp"
#include "oracles/oracle_values.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace aptf;
using namespace aptf::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("aptf_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

struct Result {
    int status;
    std::string out;
    std::string err;
};

// Runs the aptfilter binary named by $APTF_CLI.
Result run_cli(const std::string& args) {
    const char* exe = std::getenv("APTF_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "APTF_CLI is not set");
    static int counter = 0;
    const auto o = scratch() / ("stdout" + std::to_string(counter));
    const auto e = scratch() / ("stderr" + std::to_string(counter++));
    const std::string cmd = std::string(exe) + " " + args + " >" + o.string() + " 2>" + e.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(o), slurp(e)};
}

std::vector<std::string> paths(const std::vector<Diagnostic>& d, Diagnostic::Level level) {
    std::vector<std::string> out;
    for (const auto& x : d) {
        if (x.level == level) out.push_back(x.path);
    }
    return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

json basic_propagate() {
    return {{"lattice", {{"gamma", 0.25}}},
            {"input", {{"photon_number", 1}, {"occupation", {1, 0}}}},
            {"run", {{"z_stop", 10.0}, {"z_steps", 11}}}};
}

}  // namespace

TEST_CASE("csv writer and reader") {
    CsvWriter w({"a", "b"}, 6);
    w.row({1.0, 2.0 / 3.0});
    CHECK(w.str() == "a,b\n1,0.666667\n");
    CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
    CHECK_THROWS_AS(CsvWriter({"a"}, 0), std::invalid_argument);

    const auto p = scratch() / "t.csv";
    spit(p, "x, y\n1,2\n\n3 ,4e-1\n");
    const auto t = read_csv(p);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.column("y") == 1);
    CHECK(parse_number(t.rows[1][1]) == 0.4);
    CHECK_THROWS_AS((void)parse_number("1.0x"), std::invalid_argument);
    spit(p, "x,y\n1\n");
    CHECK_THROWS_AS((void)read_csv(p), std::runtime_error);
}

TEST_CASE("sha256 and output set") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    OutputSet out("v1", "test");
    out.add("b.csv", "2\n");
    out.add("a.csv", "1\n");
    CHECK_THROWS_AS(out.add("a.csv", ""), std::invalid_argument);
    CHECK_THROWS_AS(out.add("../x", ""), std::invalid_argument);
    CHECK_THROWS_AS(out.add("manifest.json", ""), std::invalid_argument);
    const auto m = json::parse(out.manifest());
    CHECK(m["outputs"][0]["file"] == "a.csv");
    CHECK(m["outputs"][0]["bytes"] == 2);
    CHECK(m["outputs"][0]["sha256"] == sha256_hex("1\n"));
    CHECK_FALSE(m.contains("seed"));
    const auto dir = scratch() / "set";
    out.commit(dir);
    CHECK(slurp(dir / "a.csv") == "1\n");
    CHECK(slurp(dir / "manifest.json") == out.manifest());
    CHECK_FALSE(fs::exists(dir / ".a.csv.tmp"));
}

TEST_CASE("schema: missing sections and fields are listed with paths") {
    const auto d = validate_config(json::object(), Command::propagate);
    const auto errors = paths(d, Diagnostic::Level::error);
    CHECK(contains(errors, "lattice"));
    CHECK(contains(errors, "input"));
    CHECK(contains(errors, "run"));
    CHECK_THROWS_AS((void)parse_config(json::object(), Command::propagate), SchemaError);

    const auto d2 = validate_config({{"lattice", json::object()}, {"input", json::object()}, {"run", json::object()}},
                                    Command::propagate);
    const auto e2 = paths(d2, Diagnostic::Level::error);
    CHECK(contains(e2, "lattice.gamma"));
    CHECK(contains(e2, "input.photon_number"));
    CHECK(contains(e2, "run.z_stop"));
    CHECK(contains(e2, "run.z_steps"));
}

TEST_CASE("schema: unknown keys, types and ranges") {
    auto doc = basic_propagate();
    CHECK(validate_config(doc, Command::propagate).empty());
    doc["lattice"]["gama"] = 0.3;
    doc["extra"] = 1;
    doc["run"]["model"] = "hermitian";
    doc["input"]["occupation"] = {1, 1};
    doc["output"] = {{"precision", 40}};
    const auto e = paths(validate_config(doc, Command::propagate), Diagnostic::Level::error);
    CHECK(contains(e, "lattice.gama"));
    CHECK(contains(e, "extra"));
    CHECK(contains(e, "run.model"));
    CHECK(contains(e, "input.occupation"));
    CHECK(contains(e, "output.precision"));

    auto neg = basic_propagate();
    neg["lattice"]["gamma"] = -0.25;
    CHECK(contains(paths(validate_config(neg, Command::propagate), Diagnostic::Level::error), "lattice.gamma"));
    auto zr = basic_propagate();
    zr["run"]["z_start"] = 5.0;
    zr["run"]["z_stop"] = 1.0;
    CHECK(contains(paths(validate_config(zr, Command::propagate), Diagnostic::Level::error), "run.z_stop"));
    auto mixed = basic_propagate();
    mixed["input"] = {{"photon_number", 2}, {"preset", "mix_11_20"}};
    CHECK(contains(paths(validate_config(mixed, Command::propagate), Diagnostic::Level::error), "input"));
    CHECK(validate_config(mixed, Command::lindblad).empty());
    auto pt = basic_propagate();
    pt["input"] = {{"photon_number", 3}, {"occupation", {3, 0}}};
    pt["run"]["model"] = "pt";
    CHECK(contains(paths(validate_config(pt, Command::propagate), Diagnostic::Level::error), "input.photon_number"));
}

TEST_CASE("schema: finite-bath revival warning") {
    auto doc = basic_propagate();
    doc["lattice"]["chain_length"] = 25;
    const auto d = validate_config(doc, Command::propagate);
    CHECK(paths(d, Diagnostic::Level::error).empty());
    REQUIRE(paths(d, Diagnostic::Level::warning).size() == 1);
    CHECK(d[0].path == "lattice.chain_length");
    CHECK(d[0].message.find("revival") != std::string::npos);
    doc["lattice"]["chain_length"] = 50;
    CHECK(validate_config(doc, Command::propagate).empty());
}

TEST_CASE("every figure preset validates") {
    for (const auto& id : figure_ids()) {
        for (const auto& job : figure_preset(id)) {
            CAPTURE(job.label);
            const auto d = validate_config(job.config, job.command);
            CHECK(paths(d, Diagnostic::Level::error).empty());
            // Only the short-chain revival scan is expected to warn.
            if (job.label.rfind("figS3", 0) != 0) CHECK(d.empty());
        }
    }
    CHECK_THROWS_AS((void)figure_preset("fig9"), std::invalid_argument);
}

TEST_CASE("table override and design CSV round trip") {
    json doc = {{"lattice", {{"gamma", 0.25}}}};
    OutputSet out("v", "design");
    (void)run_scenario(Command::design, parse_config(doc, Command::design), "design", out);
    const auto csv = out.files().at("design.csv");
    CHECK(csv.rfind("n,J_n,spacing_n\n0,0.798283,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 53);
    spit(scratch() / "design.csv", csv);

    json over = basic_propagate();
    over["lattice"]["table_override"] = "design.csv";
    const auto cfg = parse_config(over, Command::propagate, scratch());
    REQUIRE(cfg.lattice->table_override.size() == 52);
    CHECK(cfg.lattice->table_override[1] == doctest::Approx(2.31171));
    const auto lat = build_lattice(*cfg.lattice);
    CHECK(lat.j_left == doctest::Approx(0.798283));
    CHECK(lat.chain.sites() == 50);

    over["lattice"]["table_override"] = json::array({1.0, 2.0});
    CHECK(contains(paths(validate_config(over, Command::propagate), Diagnostic::Level::error), "lattice.table_override"));
}

TEST_CASE("input presets") {
    InputSection s;
    s.photon_number = 2;
    s.preset = Preset::symmetric;
    const auto sym = input_state(s);
    CHECK(sym.probabilities()[1] == doctest::Approx(0.5));
    CHECK(sym.is_normalized());
    s.preset = Preset::mix_20_02;
    CHECK_THROWS_AS((void)input_state(s), std::invalid_argument);
    const auto rho = input_density(s);
    CHECK(rho.matrix()(rho.index(2, 0), rho.index(2, 0)).real() == doctest::Approx(0.5));
    CHECK(rho.matrix()(rho.index(0, 2), rho.index(0, 2)).real() == doctest::Approx(0.5));
}

TEST_CASE("cli: figure run, manifest and byte-identical rerun") {
    const auto a = scratch() / "fig2c_a", b = scratch() / "fig2c_b";
    const auto r1 = run_cli("--figure fig2c --out " + a.string());
    REQUIRE(r1.status == 0);
    REQUIRE(run_cli("--figure fig2c --out " + b.string()).status == 0);
    CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
    CHECK(slurp(a / "fig2c.csv") == slurp(b / "fig2c.csv"));

    const auto m = json::parse(slurp(a / "manifest.json"));
    CHECK(m["command"] == "figure fig2c");
    CHECK(m["outputs"][0]["sha256"] == sha256_hex(slurp(a / "fig2c.csv")));

    const auto t = read_csv(a / "fig2c.csv");
    CHECK(t.header == std::vector<std::string>{"z", "P_0", "P_1", "success_probability", "fidelity_to_attractor"});
    const auto& last = t.rows.back();
    CHECK(parse_number(last[0]) == 10.0);
    // Full lattice at z = 10: 0.5067 / 0.4933, within 0.02 of an even split.
    const double p10 = oracle::kSingleAmplitudesZ10[0] * oracle::kSingleAmplitudesZ10[0];
    CHECK(parse_number(last[1]) == doctest::Approx(p10).epsilon(1e-9));
    CHECK(std::abs(parse_number(last[1]) - 0.5) < 0.02);
}

TEST_CASE("cli: anchor decay and design presets") {
    const auto dir = scratch() / "figS2C";
    REQUIRE(run_cli("--figure figS2C --out " + dir.string()).status == 0);
    const auto t = read_csv(dir / "figS2C_decay.csv");
    CHECK(t.header == std::vector<std::string>{"z", "intensity", "reference"});
    for (const auto& row : t.rows) {
        const double z = parse_number(row[0]);
        if (z == 0.5) CHECK(parse_number(row[1]) == doctest::Approx(oracle::kAnchorIntensity[0]).epsilon(1e-9));
        if (z == 5.0) CHECK(parse_number(row[1]) == doctest::Approx(oracle::kAnchorIntensity[1]).epsilon(1e-9));
        if (z == 10.0) CHECK(parse_number(row[1]) == doctest::Approx(oracle::kAnchorIntensity[2]).epsilon(1e-9));
        CHECK(parse_number(row[2]) == doctest::Approx(std::exp(-0.5 * z)));
    }
}

TEST_CASE("cli: schema errors exit 2 with field paths") {
    const auto empty = scratch() / "empty.json";
    spit(empty, "{}");
    const auto r = run_cli("propagate --config " + empty.string());
    CHECK(r.status == 2);
    CHECK(r.err.find("error: lattice: missing required section") != std::string::npos);
    CHECK(r.err.find("error: input: missing required section") != std::string::npos);
    CHECK(r.err.find("error: run: missing required section") != std::string::npos);

    const auto bad = scratch() / "bad.json";
    spit(bad, R"({"lattice": {"gamma": 0.25, "colour": 1}, "input": {"photon_number": 1, "occupation": [1, 0]},
                 "run": {"z_stop": 1, "z_steps": 3}})");
    const auto r2 = run_cli("propagate --config " + bad.string());
    CHECK(r2.status == 2);
    CHECK(r2.err.find("lattice.colour: unknown key") != std::string::npos);

    spit(bad, "{ not json");
    CHECK(run_cli("propagate --config " + bad.string()).status == 2);
    CHECK(run_cli("propagate").status == 1);
}

TEST_CASE("cli: validate") {
    const auto r = run_cli("validate --figure fig2c");
    CHECK(r.status == 0);
    CHECK(r.out.find("ok: no diagnostics") != std::string::npos);

    auto doc = basic_propagate();
    doc["lattice"]["chain_length"] = 25;
    const auto short_chain = scratch() / "short.json";
    spit(short_chain, doc.dump());
    const auto w = run_cli("validate --command propagate --config " + short_chain.string());
    CHECK(w.status == 0);
    CHECK(w.err.find("warning: lattice.chain_length") != std::string::npos);

    doc["lattice"]["gamma"] = -1.0;
    spit(short_chain, doc.dump());
    const auto e = run_cli("validate --config " + short_chain.string());
    CHECK(e.status == 2);
    CHECK(e.err.find("error: lattice.gamma") != std::string::npos);
}

TEST_CASE("cli: numerical failures name the module error") {
    const auto cfg = scratch() / "dissipate.json";
    spit(cfg, json{{"lattice", {{"gamma", 0.25}}},
                   {"input", {{"photon_number", 1}, {"preset", "symmetric"}}},
                   {"run", {{"model", "effective"}, {"z_stop", 2000.0}, {"z_steps", 2}}}}
                  .dump());
    const auto r = run_cli("propagate --config " + cfg.string() + " --out " + (scratch() / "never").string());
    CHECK(r.status == 3);
    CHECK(r.err.find("FullyDissipated") != std::string::npos);
    CHECK_FALSE(fs::exists(scratch() / "never"));
}

TEST_CASE("cli: tomography fit from a CSV") {
    const auto data = scratch() / "data.csv";
    spit(data, "config,p20,p02,p11\ncoupler,0.2578,0.2633,0.4789\ncoupler_after_quarter_phase,0.6737,0.0816,0.2447\n");
    const auto dir = scratch() / "tomo";
    const auto r = run_cli("tomography fit --data " + data.string() + " --out " + dir.string());
    REQUIRE(r.status == 0);
    CHECK(r.err.find("not unique") != std::string::npos);
    const auto report = json::parse(slurp(dir / "tomography_report.json"));
    CHECK(report["unique"] == false);
    CHECK(report["basins"].size() == 2);
    CHECK(report["forward_consistent"] == true);
    CHECK(fs::exists(dir / "tomography_landscape.csv"));
    CHECK(slurp(dir / "tomography_state.csv").rfind("N,k,re,im\n2,0,0.5,0\n", 0) == 0);
}

TEST_CASE("cli: ensemble seed override") {
    const auto cfg = scratch() / "ens.json";
    spit(cfg, json{{"lattice", {{"gamma", 0.25}}},
                   {"input", {{"photon_number", 1}, {"occupation", {1, 0}}}},
                   {"run", {{"z_stop", 2.0}, {"z_steps", 5}}},
                   {"ensemble", {{"trials", 3}, {"dump_trials", true}, {"seed", 5}}}}
                  .dump());
    const auto a = scratch() / "ens_a", b = scratch() / "ens_b";
    REQUIRE(run_cli("ensemble --config " + cfg.string() + " --out " + a.string()).status == 0);
    REQUIRE(run_cli("ensemble --config " + cfg.string() + " --seed 6 --out " + b.string()).status == 0);
    CHECK(json::parse(slurp(a / "manifest.json"))["seed"] == 5);
    CHECK(json::parse(slurp(b / "manifest.json"))["seed"] == 6);
    CHECK(slurp(a / "ensemble.csv") != slurp(b / "ensemble.csv"));
    CHECK(read_csv(a / "ensemble_trials.csv").rows.size() == 15);
}
