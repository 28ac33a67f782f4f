#include "aptf/fock.hpp"

#include "aptf/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace aptf::fock {

TwoModeNState::TwoModeNState(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) throw std::invalid_argument("TwoModeNState: need at least one amplitude");
}

TwoModeNState::TwoModeNState(std::initializer_list<cplx> amplitudes)
    : TwoModeNState(CVector::Map(amplitudes.begin(), static_cast<Eigen::Index>(amplitudes.size()))) {}

TwoModeNState TwoModeNState::basis(int n_photons, int k) {
    if (n_photons < 0 || k < 0 || k > n_photons) throw std::invalid_argument("TwoModeNState::basis: bad index");
    CVector v = CVector::Zero(n_photons + 1);
    v(k) = 1.0;
    return TwoModeNState(std::move(v));
}

TwoModeNState TwoModeNState::normalized() const {
    const double n = norm();
    if (!(n > 1e-300)) throw FullyDissipatedError("state has zero norm");
    return TwoModeNState(amplitudes_ / n);
}

TwoModeNState TwoModeNState::canonical_phase() const {
    const double scale = amplitudes_.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) {
        const double mag = std::abs(amplitudes_(k));
        if (mag > 1e-12 * scale) return TwoModeNState(amplitudes_ * (std::conj(amplitudes_(k)) / mag));
    }
    return *this;
}

std::vector<double> TwoModeNState::probabilities() const {
    const double total = amplitudes_.squaredNorm();
    if (!(total > 1e-300)) throw FullyDissipatedError("probabilities of a zero state");
    std::vector<double> p(static_cast<std::size_t>(amplitudes_.size()));
    for (Eigen::Index k = 0; k < amplitudes_.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(amplitudes_(k)) / total;
    return p;
}

PhotonConfig::PhotonConfig(std::vector<int> occupations) : occupations_(std::move(occupations)) {
    if (occupations_.size() < 2) throw std::invalid_argument("PhotonConfig: need at least two modes");
    for (int n : occupations_) {
        if (n < 0) throw std::invalid_argument("PhotonConfig: negative occupation");
    }
    total_ = std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

PhotonConfig PhotonConfig::two_port(int n_photons, int k, int modes) {
    if (k < 0 || k > n_photons || modes < 2) throw std::invalid_argument("PhotonConfig::two_port: bad arguments");
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    occ[0] = n_photons - k;
    occ[1] = k;
    return PhotonConfig(std::move(occ));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

TwoModeNState attractor_state(int n_photons) {
    if (n_photons < 1) throw std::invalid_argument("attractor_state: N must be >= 1");
    CVector c(n_photons + 1);
    const double scale = std::ldexp(1.0, -n_photons);
    for (int k = 0; k <= n_photons; ++k) {
        const double mag = std::sqrt(binomial(n_photons, k) * scale);
        c(k) = (k % 2 == 0) ? mag : -mag;
    }
    return TwoModeNState(std::move(c));
}

double fidelity_to(const TwoModeNState& a, const TwoModeNState& b) {
    if (a.n_photons() != b.n_photons()) throw std::invalid_argument("fidelity_to: photon number mismatch");
    return std::norm(a.amplitudes().dot(b.amplitudes()));  // Eigen dot conjugates the left operand
}

TwoModeNState kernel_steady_state(const CMatrix& h, KernelOptions options) {
    if (h.rows() != h.cols() || h.rows() < 1) throw std::invalid_argument("kernel_steady_state: need a square matrix");
    Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();  // descending
    const Eigen::Index n = s.size();
    const double threshold = options.relative_threshold * std::max(s(0), 1e-300);
    Eigen::Index kernel_dim = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (s(i) < threshold || s(0) == 0.0) ++kernel_dim;
    }
    if (kernel_dim != 1) {
        throw DegenerateKernelError("kernel_steady_state: kernel dimension " + std::to_string(kernel_dim) + " (expected 1)");
    }
    return TwoModeNState(CVector(svd.matrixV().col(n - 1))).normalized().canonical_phase();
}

CMatrix lift_generator(const CMatrix& h2, int n_photons) {
    if (h2.rows() != 2 || h2.cols() != 2) throw std::invalid_argument("lift_generator: need a 2x2 matrix");
    if (n_photons < 0) throw std::invalid_argument("lift_generator: negative photon number");
    const int n = n_photons;
    CMatrix out = CMatrix::Zero(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        // column |N-k, k>
        out(k, k) = h2(0, 0) * static_cast<double>(n - k) + h2(1, 1) * static_cast<double>(k);
        if (k < n) out(k + 1, k) = h2(1, 0) * std::sqrt(static_cast<double>((n - k) * (k + 1)));  // a_R^dag a_L
        if (k > 0) out(k - 1, k) = h2(0, 1) * std::sqrt(static_cast<double>(k * (n - k + 1)));  // a_L^dag a_R
    }
    return out;
}

void write_state_rows(std::ostream& out, const TwoModeNState& state) {
    char buf[96];
    for (int k = 0; k <= state.n_photons(); ++k) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.15g,%.15g\n", state.n_photons(), k, state[k].real(), state[k].imag());
        out << buf;
    }
}

}  // namespace aptf::fock
