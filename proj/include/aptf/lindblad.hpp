// lindblad.hpp: two-mode master equation and purity metrics
//
// Basis |n_L, n_R> with n_L, n_R <= n_max, index n_L * (n_max + 1) + n_R.
// Superoperators act on column-stacked density matrices:
// vec(A rho B) = (B^T (x) A) vec(rho).
//
// The generator is
//   L[rho] = -i (H rho - rho H^dag) + jumps[rho],
//   H = -i Gamma (a_L^dag a_R + a_R^dag a_L + n_L + n_R).
// With JumpModel::independent the jumps are 2 Gamma (a_L rho a_L^dag +
// a_R rho a_R^dag). These do not balance the decay of H, so the total trace
// is not conserved (it can grow for the dark state). JumpModel::collective
// uses the single jump sqrt(2 Gamma) (a_L + a_R), which does conserve trace.
// Both models give the same evolution inside any fixed photon-number sector.

#pragma once

#include "aptf/fock.hpp"
#include "aptf/types.hpp"

#include <cstdint>

namespace aptf::lindblad {

enum class JumpModel { independent, collective };

class DensityMatrix {
public:
    /// Validates Hermiticity (1e-10), PSD (min eigenvalue >= -1e-10) and
    /// trace <= 1 + 1e-10. Throws std::invalid_argument.
    DensityMatrix(int n_max, CMatrix matrix);
    /// No trace or positivity checks; for evolved states.
    static DensityMatrix unchecked(int n_max, CMatrix matrix);

    /// |psi><psi| of a two-port N-photon state embedded in the truncated space.
    static DensityMatrix from_state(const fock::TwoModeNState& psi, int n_max);
    /// |n_L, n_R><n_L, n_R|.
    static DensityMatrix fock(int n_left, int n_right, int n_max);

    [[nodiscard]] int n_max() const noexcept { return n_max_; }
    [[nodiscard]] int dim() const noexcept { return (n_max_ + 1) * (n_max_ + 1); }
    [[nodiscard]] const CMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] double trace() const { return matrix_.trace().real(); }
    [[nodiscard]] int index(int n_left, int n_right) const { return n_left * (n_max_ + 1) + n_right; }

private:
    DensityMatrix(int n_max, CMatrix matrix, bool validate);
    int n_max_;
    CMatrix matrix_;
};

/// Normalized block over |N-k, k>, k = 0..N.
struct SectorDensity {
    int n_photons = 0;
    CMatrix matrix;
    double sector_trace = 0.0;  // weight of the sector before renormalization
};

struct Liouvillian {
    int n_max = 0;
    double gamma = 0.0;
    JumpModel jumps = JumpModel::independent;
    CMatrix matrix;  // D^2 x D^2
};

/// Lowering operator of one port on the truncated two-mode space.
[[nodiscard]] CMatrix lowering(Port port, int n_max);

[[nodiscard]] Liouvillian build_liouvillian(double gamma, int n_max, JumpModel jumps = JumpModel::independent);

/// Apply the generator once (d rho / dz).
[[nodiscard]] CMatrix apply_liouvillian(const Liouvillian& l, const CMatrix& rho);

enum class EvolveMethod { scaling_squaring, eigen, cross_check };

/// rho(z) = exp(L z) rho0, re-Hermitized. The eigen route throws
/// NumericalError when L is not diagonalizable to working precision;
/// cross_check runs both and throws ConsistencyError if they differ by more
/// than 1e-6 entrywise. rho0 must have no weight above n_max total photons.
[[nodiscard]] DensityMatrix evolve_density(const Liouvillian& l, const DensityMatrix& rho0, double z,
                                           EvolveMethod method = EvolveMethod::scaling_squaring);

/// exp(L z) as a D^2 x D^2 matrix.
[[nodiscard]] CMatrix propagator(const Liouvillian& l, double z);

/// Smallest eigenvalue of the Choi matrix of a superoperator on D x D
/// matrices; nonnegative iff the map is completely positive.
[[nodiscard]] double choi_min_eigenvalue(const CMatrix& superop, int dim);

/// Throws FullyDissipatedError when the sector is empty (< 1e-300).
[[nodiscard]] SectorDensity postselect_block(const DensityMatrix& rho, int n_photons);

/// Tr(rho^2). Requires unit trace within 1e-8.
[[nodiscard]] double purity(const CMatrix& rho);

/// Reduced single-mode state over n = 0..n_max, keeping `keep`.
[[nodiscard]] CMatrix partial_trace(const DensityMatrix& rho, Port keep);
/// Same for a sector block, embedded first.
[[nodiscard]] CMatrix partial_trace(const SectorDensity& block, Port keep);

/// 1 / Tr(rho_r^2).
[[nodiscard]] double participation_ratio(const CMatrix& reduced);

/// log2(Tr rho_r^alpha) / (1 - alpha). alpha > 0, alpha != 1.
[[nodiscard]] double renyi_entropy(const CMatrix& reduced, double alpha = 2.0);

/// <psi| block |psi>.
[[nodiscard]] double fidelity(const SectorDensity& block, const fock::TwoModeNState& psi);

/// Phase-averaged mixture of (a + e^{i theta} b)/sqrt2: (|a><a| + |b><b|)/2
/// for orthonormal a, b.
[[nodiscard]] DensityMatrix dephased_mixture(const fock::TwoModeNState& a, const fock::TwoModeNState& b, int n_max);

/// Monte-Carlo estimate of the same mixture with theta ~ U[0, 2 pi).
[[nodiscard]] DensityMatrix sampled_mixture(const fock::TwoModeNState& a, const fock::TwoModeNState& b, int n_max,
                                            int samples, std::uint64_t seed);

}  // namespace aptf::lindblad
