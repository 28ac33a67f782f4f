#include "aptf/tomography.hpp"

#include "aptf/error.hpp"
#include "aptf/propagate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace aptf::tomography {

const char* config_name(Config c) noexcept {
    switch (c) {
        case Config::bare: return "bare";
        case Config::coupler: return "coupler";
        case Config::coupler_after_quarter_phase: return "coupler_after_quarter_phase";
    }
    return "unknown";
}

Config parse_config(const std::string& name) {
    for (Config c : {Config::bare, Config::coupler, Config::coupler_after_quarter_phase}) {
        if (name == config_name(c)) return c;
    }
    throw std::invalid_argument("unknown tomography configuration '" + name + "'");
}

TomographyDataset::TomographyDataset(Config c, Probabilities3 p) : config(c), probs(p) {
    if (p.p20 < 0.0 || p.p02 < 0.0 || p.p11 < 0.0) throw std::invalid_argument("TomographyDataset: negative probability");
    if (std::abs(p.sum() - 1.0) > 0.02) throw std::invalid_argument("TomographyDataset: probabilities must sum to 1 +- 0.02");
}

double wrap_phase(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    if (w >= 2.0 * kPi) w = 0.0;
    return w;
}

double phase_distance(double a, double b) {
    const double d = wrap_phase(a - b);
    return std::min(d, 2.0 * kPi - d);
}

fock::TwoModeNState parameterized_state(double phi1, double phi2) {
    return fock::TwoModeNState{0.5, std::polar(1.0 / std::sqrt(2.0), phi2), std::polar(0.5, phi1)};
}

namespace {

// Config circuits as 3x3 matrices on (|20>, |11>, |02>), built once.
struct Circuits {
    std::array<CMatrix, 3> ops;
    Circuits() {
        const CMatrix coupler = propagate::lift_transfer(propagate::balanced_coupler(), 2);
        const CMatrix quarter = propagate::lift_transfer(propagate::phase_shifter(kPi / 4.0, Port::right), 2);
        ops[0] = CMatrix::Identity(3, 3);
        ops[1] = coupler;
        ops[2] = coupler * quarter;
    }
};

const Circuits& circuits() {
    static const Circuits c;
    return c;
}

Probabilities3 forward_fast(double phi1, double phi2, Config config) {
    const CMatrix& op = circuits().ops[static_cast<std::size_t>(config)];
    const cplx c0 = 0.5;
    const cplx c1 = std::polar(1.0 / std::sqrt(2.0), phi2);
    const cplx c2 = std::polar(0.5, phi1);
    std::array<double, 3> p{};
    for (int r = 0; r < 3; ++r) p[static_cast<std::size_t>(r)] = std::norm(op(r, 0) * c0 + op(r, 1) * c1 + op(r, 2) * c2);
    return {p[0], p[2], p[1]};
}

double sq(double x) { return x * x; }

// Golden-section minimum of f on [a, b].
double golden(const std::function<double(double)>& f, double a, double b, double tol = 1e-12) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > tol) {
        if (fc <= fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

void parallel_rows(int rows, int threads, const std::function<void(int)>& body) {
    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min(n, rows);
    if (n <= 1) {
        for (int r = 0; r < rows; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        pool.emplace_back([&, t] {
            for (int r = t; r < rows; r += n) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

Probabilities3 forward_probs(double phi1, double phi2, Config config) { return forward_fast(phi1, phi2, config); }

double mse(double phi1, double phi2, const std::vector<TomographyDataset>& data) {
    double s = 0.0;
    for (const auto& d : data) {
        const Probabilities3 p = forward_fast(phi1, phi2, d.config);
        s += sq(p.p20 - d.probs.p20) + sq(p.p02 - d.probs.p02) + sq(p.p11 - d.probs.p11);
    }
    return s;
}

RMatrix mse_landscape(const std::vector<TomographyDataset>& data, int grid, int threads) {
    if (grid < 4) throw std::invalid_argument("mse_landscape: grid must be >= 4");
    RMatrix out(grid, grid);
    const double h = 2.0 * kPi / grid;
    parallel_rows(grid, threads, [&](int i) {
        for (int j = 0; j < grid; ++j) out(i, j) = mse(i * h, j * h, data);
    });
    return out;
}

PhaseEstimate fit_phases(const std::vector<TomographyDataset>& data, FitOptions options) {
    const bool has_coupler = std::any_of(data.begin(), data.end(), [](const auto& d) { return d.config == Config::coupler; });
    const bool has_quarter = std::any_of(data.begin(), data.end(),
                                         [](const auto& d) { return d.config == Config::coupler_after_quarter_phase; });
    if (!has_coupler || !has_quarter) {
        throw std::invalid_argument("fit_phases: coupler and quarter-phase datasets are both required");
    }
    const int g = options.grid;
    const RMatrix land = mse_landscape(data, g, options.threads);
    const double h = 2.0 * kPi / g;
    const double grid_min = land.minCoeff();

    // Grid local minima (8-neighbourhood, periodic) as refinement seeds.
    struct Seed { double mse; int i, j; };
    std::vector<Seed> seeds;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double v = land(i, j);
            if (v > options.basin_factor * grid_min + 1e-3) continue;
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if ((di || dj) && land((i + di + g) % g, (j + dj + g) % g) < v) { is_min = false; break; }
                }
            }
            if (is_min) seeds.push_back({v, i, j});
        }
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
        return a.mse != b.mse ? a.mse < b.mse : (a.i != b.i ? a.i < b.i : a.j < b.j);
    });
    if (seeds.size() > 64) seeds.resize(64);

    std::vector<Basin> refined;
    for (const Seed& s : seeds) {
        double x = s.i * h, y = s.j * h;
        for (int sweep = 0; sweep < 200; ++sweep) {
            const double x0 = x, y0 = y;
            x = golden([&](double t) { return mse(t, y, data); }, x - 2 * h, x + 2 * h);
            y = golden([&](double t) { return mse(x, t, data); }, y - 2 * h, y + 2 * h);
            const double dx = x - x0, dy = y - y0;
            const double step = std::hypot(dx, dy);
            if (step < 1e-11) break;
            // Line search along the sweep displacement to cut zig-zagging in narrow valleys.
            const double t = golden([&](double a) { return mse(x0 + a * dx, y0 + a * dy, data); }, 0.0, 4.0);
            x = x0 + t * dx;
            y = y0 + t * dy;
        }
        refined.push_back({wrap_phase(x), wrap_phase(y), mse(x, y, data)});
    }

    double best = INFINITY;
    for (const auto& b : refined) best = std::min(best, b.mse);
    const double cut = options.basin_factor * best + options.basin_floor;
    std::vector<Basin> basins;
    for (const auto& b : refined) {
        if (b.mse > cut) continue;
        auto same = std::find_if(basins.begin(), basins.end(), [&](const Basin& o) {
            return phase_distance(o.phi1, b.phi1) < 0.05 && phase_distance(o.phi2, b.phi2) < 0.05;
        });
        if (same == basins.end()) {
            basins.push_back(b);
        } else if (b.mse < same->mse) {
            *same = b;
        }
    }
    // Ties within rounding are ordered lexicographically in (phi1, phi2).
    const double tie = best * (1.0 + 1e-9) + 1e-15;
    std::sort(basins.begin(), basins.end(), [tie](const Basin& a, const Basin& b) {
        const bool ta = a.mse <= tie, tb = b.mse <= tie;
        if (ta != tb) return ta;
        if (!ta && a.mse != b.mse) return a.mse < b.mse;
        return a.phi1 != b.phi1 ? a.phi1 < b.phi1 : a.phi2 < b.phi2;
    });

    PhaseEstimate est;
    est.basins = basins;
    est.phi1 = basins.front().phi1;
    est.phi2 = basins.front().phi2;
    est.mse = basins.front().mse;
    est.unique = basins.size() == 1;
    return est;
}

bool forward_consistent(const PhaseEstimate& estimate, const std::vector<TomographyDataset>& data, double tol) {
    for (const auto& d : data) {
        const Probabilities3 p = forward_fast(estimate.phi1, estimate.phi2, d.config);
        if (std::abs(p.p20 - d.probs.p20) > tol || std::abs(p.p02 - d.probs.p02) > tol ||
            std::abs(p.p11 - d.probs.p11) > tol) {
            return false;
        }
    }
    return true;
}

PortPair forward_single(double phi, Config config) {
    CVector v(2);
    v << 1.0 / std::sqrt(2.0), std::polar(1.0 / std::sqrt(2.0), phi);
    if (config == Config::coupler_after_quarter_phase) v(1) *= std::polar(1.0, kPi / 4.0);
    if (config != Config::bare) v = propagate::balanced_coupler() * v;
    return {std::norm(v(0)), std::norm(v(1))};
}

double fit_single_photon_phase(std::optional<PortPair> bare, std::optional<PortPair> coupler,
                               std::optional<PortPair> quarter) {
    std::vector<std::pair<Config, PortPair>> data;
    for (auto [c, p] : {std::pair{Config::bare, bare}, std::pair{Config::coupler, coupler},
                        std::pair{Config::coupler_after_quarter_phase, quarter}}) {
        if (!p) continue;
        if (std::abs(p->first + p->second - 1.0) > 0.02) {
            throw std::invalid_argument("fit_single_photon_phase: port probabilities must sum to 1 +- 0.02");
        }
        data.emplace_back(c, *p);
    }
    if (data.empty()) throw std::invalid_argument("fit_single_photon_phase: no data");
    auto f = [&](double phi) {
        double s = 0.0;
        for (const auto& [c, p] : data) {
            const PortPair q = forward_single(phi, c);
            s += sq(q.first - p.first) + sq(q.second - p.second);
        }
        return s;
    };
    constexpr int g = 3600;
    const double h = 2.0 * kPi / g;
    std::vector<double> vals(g);
    for (int i = 0; i < g; ++i) vals[static_cast<std::size_t>(i)] = f(i * h);
    std::vector<Basin> minima;
    for (int i = 0; i < g; ++i) {
        const double v = vals[static_cast<std::size_t>(i)];
        if (v <= vals[static_cast<std::size_t>((i + 1) % g)] && v <= vals[static_cast<std::size_t>((i + g - 1) % g)]) {
            const double x = golden(f, i * h - h, i * h + h);
            minima.push_back({wrap_phase(x), 0.0, f(x)});
        }
    }
    double best = INFINITY;
    for (const auto& m : minima) best = std::min(best, m.mse);
    std::vector<double> basins;
    for (const auto& m : minima) {
        if (m.mse > 2.0 * best + 1e-12) continue;
        if (std::none_of(basins.begin(), basins.end(), [&](double b) { return phase_distance(b, m.phi1) < 0.01; })) {
            basins.push_back(m.phi1);
        }
    }
    if (basins.size() != 1) {
        throw AmbiguousFitError("fit_single_photon_phase: " + std::to_string(basins.size()) +
                                " equally good phases; supply coupler and quarter-phase data");
    }
    return basins.front();
}

lindblad::SectorDensity reconstruct_density(const Probabilities3& m, const PhaseEstimate& phases) {
    const double total = m.sum();
    if (std::abs(total - 1.0) > 0.02 || m.p20 < 0.0 || m.p02 < 0.0 || m.p11 < 0.0) {
        throw std::invalid_argument("reconstruct_density: probabilities must be nonnegative and sum to 1 +- 0.02");
    }
    CVector psi(3);
    psi << std::sqrt(m.p20 / total), std::polar(std::sqrt(m.p11 / total), phases.phi2),
        std::polar(std::sqrt(m.p02 / total), phases.phi1);
    return {2, psi * psi.adjoint(), 1.0};
}

lindblad::SectorDensity reconstruct_single(const PortPair& m, double phi) {
    const double total = m.first + m.second;
    if (std::abs(total - 1.0) > 0.02 || m.first < 0.0 || m.second < 0.0) {
        throw std::invalid_argument("reconstruct_single: probabilities must be nonnegative and sum to 1 +- 0.02");
    }
    CVector psi(2);
    psi << std::sqrt(m.first / total), std::polar(std::sqrt(m.second / total), phi);
    return {1, psi * psi.adjoint(), 1.0};
}

double fidelity_diag(const std::vector<double>& p, const std::vector<double>& q, FidelityMode mode) {
    if (p.size() != q.size() || p.empty()) throw std::invalid_argument("fidelity_diag: distributions must match in size");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0) throw std::invalid_argument("fidelity_diag: negative probability");
        s += mode == FidelityMode::as_printed ? p[i] * q[i] : std::sqrt(p[i] * q[i]);
    }
    return mode == FidelityMode::as_printed ? s : s * s;
}

std::pair<double, double> alternate_to_main(double phi1, double phi2) {
    return {wrap_phase(phi1), wrap_phase(phi2 + kPi)};
}

std::pair<double, double> main_to_alternate(double phi1, double phi2) {
    return {wrap_phase(phi1), wrap_phase(phi2 - kPi)};
}

}  // namespace aptf::tomography
