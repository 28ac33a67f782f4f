// fock.hpp: two-port Fock-space bookkeeping
//
// Two-mode N-photon states are stored in the basis |N-k, k>, k = 0..N, where
// k is the occupation of the right port. Global phases are fixed so that the
// first nonzero amplitude is real and positive.

#pragma once

#include "aptf/types.hpp"

#include <iosfwd>
#include <vector>

namespace aptf::fock {

class TwoModeNState {
public:
    /// Amplitude k belongs to |N-k, k>; N = amplitudes.size() - 1.
    explicit TwoModeNState(CVector amplitudes);
    TwoModeNState(std::initializer_list<cplx> amplitudes);

    /// |N-k, k>
    static TwoModeNState basis(int n_photons, int k);

    [[nodiscard]] int n_photons() const noexcept { return static_cast<int>(amplitudes_.size()) - 1; }
    [[nodiscard]] const CVector& amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] cplx operator[](int k) const { return amplitudes_(k); }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }
    [[nodiscard]] bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }
    /// Throws FullyDissipatedError for a zero vector.
    [[nodiscard]] TwoModeNState normalized() const;
    /// Same ray with the canonical global phase.
    [[nodiscard]] TwoModeNState canonical_phase() const;
    /// |c_k|^2 / sum |c|^2
    [[nodiscard]] std::vector<double> probabilities() const;

private:
    CVector amplitudes_;
};

/// Occupation numbers over M >= 2 modes.
class PhotonConfig {
public:
    explicit PhotonConfig(std::vector<int> occupations);

    /// N-k photons in mode 0, k in mode 1, vacuum in the remaining modes.
    static PhotonConfig two_port(int n_photons, int k, int modes = 2);

    [[nodiscard]] const std::vector<int>& occupations() const noexcept { return occupations_; }
    [[nodiscard]] int modes() const noexcept { return static_cast<int>(occupations_.size()); }
    [[nodiscard]] int total() const noexcept { return total_; }
    [[nodiscard]] int operator[](int mode) const { return occupations_.at(static_cast<std::size_t>(mode)); }
    bool operator==(const PhotonConfig&) const = default;

private:
    std::vector<int> occupations_;
    int total_ = 0;
};

/// Normalized zero-loss state c_k = (-1)^k sqrt(C(N,k) / 2^N). Requires N >= 1.
[[nodiscard]] TwoModeNState attractor_state(int n_photons);

/// |<a|b>|^2 for normalized states of equal photon number.
[[nodiscard]] double fidelity_to(const TwoModeNState& a, const TwoModeNState& b);

struct KernelOptions {
    double relative_threshold = 1e-10;
};

/// Normalized null vector of an (N+1)x(N+1) matrix. Throws
/// DegenerateKernelError unless the numerical kernel is one-dimensional.
[[nodiscard]] TwoModeNState kernel_steady_state(const CMatrix& h, KernelOptions options = {});

/// Two-port N-photon matrix of the quadratic form sum_ij h(i,j) a_i^dag a_j,
/// with i, j in {0 = left, 1 = right}.
[[nodiscard]] CMatrix lift_generator(const CMatrix& h2, int n_photons);

/// CSV rows "N,k,re,im" (no header).
void write_state_rows(std::ostream& out, const TwoModeNState& state);

[[nodiscard]] double binomial(int n, int k);

}  // namespace aptf::fock
