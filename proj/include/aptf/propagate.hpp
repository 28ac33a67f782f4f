// propagate.hpp: linear-optical propagation and post-selection
//
// Transfer matrices act on creation operators: a_in^dag -> sum_out
// T(out, in) a_out^dag. Modes 0 and 1 are the system ports L and R. Multi-photon
// amplitudes are permanents of row/column-repeated submatrices.

#pragma once

#include "aptf/fock.hpp"
#include "aptf/linalg.hpp"
#include "aptf/types.hpp"

#include <vector>

namespace aptf::propagate {

class ModeUnitary {
public:
    /// Throws std::invalid_argument unless U^H U = I within tol.
    explicit ModeUnitary(CMatrix matrix, double z = 0.0, double tol = 1e-10);

    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] double z() const noexcept { return z_; }
    [[nodiscard]] int modes() const noexcept { return static_cast<int>(matrix_.rows()); }

private:
    CMatrix matrix_;
    double z_;
};

/// U = exp(i H z) for Hermitian H, z >= 0.
[[nodiscard]] ModeUnitary propagator(const CMatrix& h, double z);

/// Cached eigendecomposition for z sweeps over one Hamiltonian.
class LatticePropagator {
public:
    explicit LatticePropagator(const CMatrix& h);
    [[nodiscard]] ModeUnitary at(double z) const;
    /// Top-left 2x2 block of exp(i H z) (system ports only).
    [[nodiscard]] CMatrix port_block(double z) const;
    [[nodiscard]] int modes() const noexcept { return static_cast<int>(exp_.dim()); }

private:
    linalg::HermitianExp exp_;
    CMatrix port_rows_;  // rows 0,1 of the eigenvector matrix
};

struct PostSelectedResult {
    fock::TwoModeNState state;    // normalized
    double success_probability;  // squared norm before normalization
};

/// Ryser's formula with Gray-code subset order. Square input.
[[nodiscard]] cplx permanent(const CMatrix& a);

struct AmplitudeOptions {
    int max_photons = 6;
    bool allow_large = false;  // bypass the max_photons guard
};

/// <out| T |in> for a general (not necessarily unitary) transfer matrix.
[[nodiscard]] cplx transfer_amplitude(const CMatrix& t, const fock::PhotonConfig& input,
                                      const fock::PhotonConfig& output, AmplitudeOptions options = {});

[[nodiscard]] cplx n_photon_amplitude(const ModeUnitary& u, const fock::PhotonConfig& input,
                                      const fock::PhotonConfig& output, AmplitudeOptions options = {});

/// (N+1)x(N+1) action of a 2x2 transfer matrix on the two-port N-photon
/// space; entry (m, n) = <N-m, m| T |N-n, n>.
[[nodiscard]] CMatrix lift_transfer(const CMatrix& t2, int n_photons, AmplitudeOptions options = {});

/// Input photons must all sit in modes 0 and 1 and total n_photons. Throws
/// FullyDissipatedError when nothing survives in the ports.
[[nodiscard]] PostSelectedResult postselect_two_ports(const ModeUnitary& u, const fock::PhotonConfig& input,
                                                      int n_photons, AmplitudeOptions options = {});

/// Superposition input through any transfer matrix with at least two modes;
/// only the port block T[0:2, 0:2] enters.
[[nodiscard]] PostSelectedResult postselect_two_ports(const CMatrix& transfer, const fock::TwoModeNState& input,
                                                      AmplitudeOptions options = {});

/// a_L^dag -> (c^dag + i d^dag)/sqrt2, a_R^dag -> (i c^dag + d^dag)/sqrt2.
[[nodiscard]] CMatrix balanced_coupler();
/// diag(1, e^{i phi}) on the right port, or diag(e^{i phi}, 1) on the left.
[[nodiscard]] CMatrix phase_shifter(double phi, Port port = Port::right);

[[nodiscard]] fock::TwoModeNState apply_coupler(const fock::TwoModeNState& state);
/// Right port: c_k -> c_k e^{i k phi}. Left port: c_k -> c_k e^{i (N-k) phi}.
[[nodiscard]] fock::TwoModeNState apply_phase(const fock::TwoModeNState& state, double phi,
                                              Port port = Port::right);

/// Zero-loss state of the filter with unequal system couplings: the N-fold
/// power of the dark mode J_R a_L^dag - J_L a_R^dag, found as the kernel of the
/// lifted dissipator. Throws DegenerateKernelError.
[[nodiscard]] fock::TwoModeNState steady_state_asymmetric(double j_left, double j_right, int n_photons);

/// Two-photon NOON conversion elements in the (|20>, |11>, |02>) order, as
/// tabulated to four digits.
[[nodiscard]] CMatrix noon_phase_gate();
[[nodiscard]] CMatrix noon_two_photon_transfer();
/// Single-photon beam splitter the two-photon transfer is derived from.
[[nodiscard]] CMatrix noon_beam_splitter();

/// noon_two_photon_transfer * noon_phase_gate * state, renormalized. N = 2.
[[nodiscard]] fock::TwoModeNState noon_convert(const fock::TwoModeNState& state);

/// Converter output restricted to |20>, |02> (no coincidence click).
[[nodiscard]] PostSelectedResult noon_anti_coincidence(const fock::TwoModeNState& state);

/// Same evolution as pt_coupler_reference, keeping the state and its squared
/// norm (which can exceed 1: the left port has gain).
[[nodiscard]] PostSelectedResult pt_coupler_evolve(double gamma, double kappa, double z,
                                                   const fock::TwoModeNState& input);

/// Renormalized probabilities after exp(-i H_N z) with H = [[i gamma, kappa],
/// [kappa, -i gamma]] lifted to N <= 2 photons.
[[nodiscard]] std::vector<double> pt_coupler_reference(double gamma, double kappa, double z,
                                                       const fock::TwoModeNState& input);

}  // namespace aptf::propagate
