#include "aptf/propagate.hpp"

#include "aptf/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace aptf::propagate {

ModeUnitary::ModeUnitary(CMatrix matrix, double z, double tol) : matrix_(std::move(matrix)), z_(z) {
    if (!linalg::is_unitary(matrix_, tol)) throw std::invalid_argument("ModeUnitary: matrix is not unitary");
}

ModeUnitary propagator(const CMatrix& h, double z) {
    if (!(z >= 0.0)) throw std::invalid_argument("propagator: z must be >= 0");
    if (!linalg::is_hermitian(h)) throw std::invalid_argument("propagator: Hamiltonian is not Hermitian");
    return ModeUnitary(linalg::HermitianExp(h).at(z), z);
}

LatticePropagator::LatticePropagator(const CMatrix& h) : exp_(h) {
    if (h.rows() < 2) throw std::invalid_argument("LatticePropagator: need at least two modes");
    port_rows_ = exp_.eigenvectors().topRows(2);
}

ModeUnitary LatticePropagator::at(double z) const {
    if (!(z >= 0.0)) throw std::invalid_argument("LatticePropagator: z must be >= 0");
    return ModeUnitary(exp_.at(z), z);
}

CMatrix LatticePropagator::port_block(double z) const {
    const CVector phases = (kI * z * exp_.eigenvalues().cast<cplx>()).array().exp().matrix();
    return port_rows_ * phases.asDiagonal() * port_rows_.adjoint();
}

cplx permanent(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("permanent: matrix must be square");
    const int n = static_cast<int>(a.rows());
    if (n == 0) return 1.0;
    if (n > 30) throw std::invalid_argument("permanent: matrix too large");
    std::vector<cplx> row_sum(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    cplx total{0.0, 0.0};
    std::uint32_t gray = 0;
    const std::uint32_t subsets = std::uint32_t{1} << n;
    for (std::uint32_t k = 1; k < subsets; ++k) {
        const int j = std::countr_zero(k);
        gray ^= std::uint32_t{1} << j;
        const double step = (gray >> j) & 1u ? 1.0 : -1.0;
        cplx prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) {
            row_sum[static_cast<std::size_t>(i)] += step * a(i, j);
            prod *= row_sum[static_cast<std::size_t>(i)];
        }
        total += ((n - std::popcount(gray)) % 2 == 0) ? prod : -prod;
    }
    return total;
}

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<int> repeated_modes(const fock::PhotonConfig& c) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(c.total()));
    for (int m = 0; m < c.modes(); ++m) idx.insert(idx.end(), static_cast<std::size_t>(c[m]), m);
    return idx;
}

void check_guard(int n, const AmplitudeOptions& options) {
    if (n > options.max_photons && !options.allow_large) {
        throw std::invalid_argument("photon number " + std::to_string(n) + " exceeds the permanent guard of " +
                                    std::to_string(options.max_photons) + " (set allow_large to override)");
    }
}

}  // namespace

cplx transfer_amplitude(const CMatrix& t, const fock::PhotonConfig& input, const fock::PhotonConfig& output,
                        AmplitudeOptions options) {
    if (input.total() != output.total()) throw std::invalid_argument("transfer_amplitude: photon number mismatch");
    if (input.modes() != t.cols() || output.modes() != t.rows()) {
        throw std::invalid_argument("transfer_amplitude: configuration does not match matrix shape");
    }
    check_guard(input.total(), options);
    const std::vector<int> rows = repeated_modes(output);
    const std::vector<int> cols = repeated_modes(input);
    const auto n = static_cast<Eigen::Index>(rows.size());
    CMatrix sub(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) sub(r, c) = t(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    }
    double norm = 1.0;
    for (int m = 0; m < input.modes(); ++m) norm *= factorial(input[m]);
    for (int m = 0; m < output.modes(); ++m) norm *= factorial(output[m]);
    return permanent(sub) / std::sqrt(norm);
}

cplx n_photon_amplitude(const ModeUnitary& u, const fock::PhotonConfig& input, const fock::PhotonConfig& output,
                        AmplitudeOptions options) {
    return transfer_amplitude(u.matrix(), input, output, options);
}

CMatrix lift_transfer(const CMatrix& t2, int n_photons, AmplitudeOptions options) {
    if (t2.rows() != 2 || t2.cols() != 2) throw std::invalid_argument("lift_transfer: need a 2x2 matrix");
    if (n_photons < 0) throw std::invalid_argument("lift_transfer: negative photon number");
    const int n = n_photons;
    CMatrix out(n + 1, n + 1);
    for (int col = 0; col <= n; ++col) {
        const auto in = fock::PhotonConfig::two_port(n, col);
        for (int row = 0; row <= n; ++row) {
            out(row, col) = transfer_amplitude(t2, in, fock::PhotonConfig::two_port(n, row), options);
        }
    }
    return out;
}

namespace {

PostSelectedResult finish(CVector amplitudes) {
    const double p = amplitudes.squaredNorm();
    if (!(p >= 1e-300)) throw FullyDissipatedError("post-selection: no amplitude left in the system ports");
    return {fock::TwoModeNState(amplitudes / std::sqrt(p)), p};
}

}  // namespace

PostSelectedResult postselect_two_ports(const ModeUnitary& u, const fock::PhotonConfig& input, int n_photons,
                                        AmplitudeOptions options) {
    if (input.total() != n_photons) throw std::invalid_argument("postselect_two_ports: input photon number mismatch");
    if (input.modes() != u.modes()) throw std::invalid_argument("postselect_two_ports: input mode count mismatch");
    for (int m = 2; m < input.modes(); ++m) {
        if (input[m] != 0) throw std::invalid_argument("postselect_two_ports: bath modes must start in vacuum");
    }
    CVector amps(n_photons + 1);
    for (int k = 0; k <= n_photons; ++k) {
        amps(k) = n_photon_amplitude(u, input, fock::PhotonConfig::two_port(n_photons, k, u.modes()), options);
    }
    return finish(std::move(amps));
}

PostSelectedResult postselect_two_ports(const CMatrix& transfer, const fock::TwoModeNState& input,
                                        AmplitudeOptions options) {
    if (transfer.rows() < 2 || transfer.cols() < 2) throw std::invalid_argument("postselect_two_ports: need >= 2 modes");
    const CMatrix block = transfer.topLeftCorner(2, 2);
    return finish(lift_transfer(block, input.n_photons(), options) * input.amplitudes());
}

CMatrix balanced_coupler() {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix c(2, 2);
    c << s, kI * s, kI * s, s;
    return c;
}

CMatrix phase_shifter(double phi, Port port) {
    CMatrix p = CMatrix::Identity(2, 2);
    p(port == Port::right ? 1 : 0, port == Port::right ? 1 : 0) = std::polar(1.0, phi);
    return p;
}

fock::TwoModeNState apply_coupler(const fock::TwoModeNState& state) {
    return fock::TwoModeNState(lift_transfer(balanced_coupler(), state.n_photons()) * state.amplitudes());
}

fock::TwoModeNState apply_phase(const fock::TwoModeNState& state, double phi, Port port) {
    const int n = state.n_photons();
    CVector out = state.amplitudes();
    for (int k = 0; k <= n; ++k) out(k) *= std::polar(1.0, (port == Port::right ? k : n - k) * phi);
    return fock::TwoModeNState(std::move(out));
}

fock::TwoModeNState steady_state_asymmetric(double j_left, double j_right, int n_photons) {
    if (!(j_left > 0.0) || !(j_right > 0.0)) throw std::invalid_argument("steady_state_asymmetric: couplings must be > 0");
    if (n_photons < 1) throw std::invalid_argument("steady_state_asymmetric: N must be >= 1");
    // Rank-one dissipator |j><j| with j = (J_L, J_R); its lift has a one-dimensional kernel.
    const double scale = j_left * j_left + j_right * j_right;
    CMatrix d(2, 2);
    d << j_left * j_left, j_left * j_right, j_left * j_right, j_right * j_right;
    return fock::kernel_steady_state(fock::lift_generator(d / scale, n_photons));
}

CMatrix noon_phase_gate() {
    CMatrix u = CMatrix::Identity(3, 3);
    u(1, 1) = kI;
    return u;
}

CMatrix noon_two_photon_transfer() {
    CMatrix u(3, 3);
    u << 0.8556, 0.5 * kI, -0.1463,
         0.5 * kI, 0.707, 0.5 * kI,
         -0.1463, 0.5 * kI, 0.8556;
    return u;
}

CMatrix noon_beam_splitter() {
    CMatrix u(2, 2);
    u << 0.928, 0.385 * kI, 0.385 * kI, 0.928;
    return u;
}

namespace {

CVector noon_raw(const fock::TwoModeNState& state) {
    if (state.n_photons() != 2) throw std::invalid_argument("noon_convert: requires a two-photon state");
    return noon_two_photon_transfer() * (noon_phase_gate() * state.amplitudes());
}

}  // namespace

fock::TwoModeNState noon_convert(const fock::TwoModeNState& state) {
    return fock::TwoModeNState(noon_raw(state)).normalized();
}

PostSelectedResult noon_anti_coincidence(const fock::TwoModeNState& state) {
    CVector out = noon_raw(state);
    out(1) = 0.0;
    return finish(std::move(out));
}

PostSelectedResult pt_coupler_evolve(double gamma, double kappa, double z, const fock::TwoModeNState& input) {
    if (input.n_photons() > 2) throw std::invalid_argument("pt_coupler_evolve: N <= 2 only");
    if (!(z >= 0.0)) throw std::invalid_argument("pt_coupler_evolve: z must be >= 0");
    CMatrix h(2, 2);
    h << kI * gamma, kappa, kappa, -kI * gamma;
    const CMatrix hn = fock::lift_generator(h, input.n_photons());
    const fock::TwoModeNState out(CVector(linalg::expm(-kI * z * hn) * input.amplitudes()));
    return {out.normalized(), out.norm() * out.norm()};
}

std::vector<double> pt_coupler_reference(double gamma, double kappa, double z, const fock::TwoModeNState& input) {
    return pt_coupler_evolve(gamma, kappa, z, input).state.probabilities();
}

}  // namespace aptf::propagate
