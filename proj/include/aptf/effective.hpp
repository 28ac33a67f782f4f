// effective.hpp: reduced non-Hermitian filter model
//
// Evolution is psi(z) = exp(-i H z) psi(0) with H = -i Gamma (sigma_x + I) on
// one photon, lifted to the N-photon two-port space. Amplitudes decay; the
// zero eigenvalue carries the attractor.

#pragma once

#include "aptf/fock.hpp"
#include "aptf/propagate.hpp"
#include "aptf/types.hpp"

namespace aptf::effective {

class EffectiveAptHamiltonian {
public:
    /// Lift of -i * g, where g is a real symmetric 2x2 dissipation matrix.
    EffectiveAptHamiltonian(const RMatrix& dissipation, int n_photons, double cond_limit = 1e8);

    [[nodiscard]] int n_photons() const noexcept { return n_photons_; }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const CVector& eigenvalues() const noexcept { return eigenvalues_; }
    /// exp(-i H z).
    [[nodiscard]] CMatrix propagator(double z) const;
    /// True when the cached eigenbasis is used (condition number within limit).
    [[nodiscard]] bool diagonalized() const noexcept { return diagonalized_; }

private:
    int n_photons_;
    CMatrix matrix_;
    CVector eigenvalues_;
    CMatrix vectors_;
    CMatrix inverse_;
    bool diagonalized_ = false;
};

/// -i Gamma (T_N + N I). Gamma > 0, N >= 1.
[[nodiscard]] EffectiveAptHamiltonian build_effective(double gamma, int n_photons);

/// Unequal port decay rates: lift of -i [[G_L, sqrt(G_L G_R)], [sqrt(G_L G_R), G_R]].
[[nodiscard]] EffectiveAptHamiltonian build_effective_asymmetric(double gamma_left, double gamma_right,
                                                                 int n_photons);

/// Renormalized exp(-i H z) input with its squared norm. Throws
/// FullyDissipatedError below 1e-300.
[[nodiscard]] propagate::PostSelectedResult evolve_effective(const EffectiveAptHamiltonian& h,
                                                             const fock::TwoModeNState& input, double z);

/// exp(-Gamma z) amplitude of a single waveguide decaying into a Markovian bath.
[[nodiscard]] double ww_decay_reference(double gamma, double z);

/// Single-photon port transfer exp(-Gamma z (I + sigma_x)).
[[nodiscard]] CMatrix effective_transfer_2x2(double gamma, double z);

}  // namespace aptf::effective
