// lattice.hpp: bath synthesis and Lanczos design chains
//
// Mode order of every APT lattice is [L, R, chain_0, chain_1, ...]. Couplings
// are in cm^-1, spacings in micrometres.

#pragma once

#include "aptf/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace aptf::lattice {

/// Wigner–Weisskopf star: one anchor site coupled with w = sqrt(Gamma*Delta/pi)
/// to 2K+1 levels at detunings k*Delta, k = -K..K, Delta = B/K.
struct BathSpec {
    double half_bandwidth = 4.0;  // B
    int half_levels = 500;        // K
    double gamma = 0.25;          // Gamma

    [[nodiscard]] int n_levels() const noexcept { return 2 * half_levels + 1; }
    [[nodiscard]] double level_spacing() const { return half_bandwidth / half_levels; }
    [[nodiscard]] double level_coupling() const;
    /// Throws std::invalid_argument.
    void validate() const;
};

struct CouplingChain {
    RVector detunings;  // epsilon_0 .. epsilon_{m-1}
    RVector couplings;  // J_0 .. J_{m-2}, J_i joins sites i and i+1

    CouplingChain() = default;
    /// Throws std::invalid_argument on length mismatch or negative couplings.
    CouplingChain(RVector detunings, RVector couplings);
    /// Zero detunings.
    static CouplingChain uniform_detuning(const std::vector<double>& couplings);

    [[nodiscard]] int sites() const noexcept { return static_cast<int>(detunings.size()); }
    /// Sites [first, first + count) with their internal bonds.
    [[nodiscard]] CouplingChain slice(int first, int count) const;
    /// Tridiagonal Hamiltonian of the chain itself.
    [[nodiscard]] CMatrix hamiltonian() const;
};

struct LanczosOptions {
    bool reorthogonalize = true;
    /// Breakdown when C < breakdown_tolerance * ||H||_1.
    double breakdown_tolerance = 1e-12;
};

struct LanczosResult {
    CouplingChain chain;
    /// max |V^H V - I| over the generated Krylov basis.
    double orthogonality_drift = 0.0;
    std::vector<int> breakdown_steps;
};

/// Star Hamiltonian of size (2K+2), anchor at index 0.
[[nodiscard]] CMatrix build_ww_star(const BathSpec& spec);

/// Anchored Lanczos recursion producing an m-site chain with
/// epsilon_i = v_i^H H v_i and C_i = ||p_i||. On breakdown the next vector is
/// the first canonical basis vector with a nonzero component orthogonal to
/// the current Krylov basis, and the recorded coupling is 0.
[[nodiscard]] LanczosResult lanczos_tridiagonalize(const CMatrix& h, const CVector& v1, int m,
                                                   LanczosOptions options = {});

/// Lanczos chain of the default bath anchored at the star centre; site 0 is
/// the system waveguide, so couplings(0) is the system coupling J_0.
/// n_couplings bonds are produced (n_couplings + 1 sites).
[[nodiscard]] CouplingChain design_chain(const BathSpec& spec, int n_couplings);

/// Two system waveguides L, R side-coupled to chain site 0.
struct AptLattice {
    CouplingChain chain;
    double j_left = 0.0;
    double j_right = 0.0;
    double delta = 0.0;  // system detuning on L and R

    /// From a design chain (site 0 = anchor): the environment is design sites
    /// 1..chain_sites, and J_L = J_R = J_0 unless given.
    static AptLattice from_design(const CouplingChain& design, int chain_sites,
                                  std::optional<double> j_left = std::nullopt,
                                  std::optional<double> j_right = std::nullopt, double delta = 0.0);

    [[nodiscard]] int modes() const noexcept { return 2 + chain.sites(); }
    [[nodiscard]] CMatrix hamiltonian() const;
};

/// Hermitian matrix over [L, R, chain...]. Throws on an empty chain or
/// nonpositive system couplings.
[[nodiscard]] CMatrix build_apt_lattice(const CouplingChain& chain, double j_left, double j_right,
                                        double delta = 0.0);

/// Default fabricated lattice: 50 environment sites from the K=500, B=4,
/// Gamma=0.25 bath.
[[nodiscard]] AptLattice default_apt_lattice(int chain_sites = 50, const BathSpec& spec = {});

/// Exponential coupling/spacing model J(d) = A exp(-d / d0), calibrated on
/// (20.0 um, 0.8 cm^-1) and (14.3 um, 2.3 cm^-1).
struct SpacingModel {
    double amplitude;      // A, cm^-1
    double decay_length;   // d0, um
    double valid_min = 0.1;
    double valid_max = 10.0;

    static SpacingModel calibrated();
};

struct SpacingResult {
    double value = 0.0;
    bool extrapolated = false;  // J outside [valid_min, valid_max]
};

[[nodiscard]] SpacingResult coupling_to_spacing(double j, const SpacingModel& model = SpacingModel::calibrated());
[[nodiscard]] SpacingResult spacing_to_coupling(double d_um, const SpacingModel& model = SpacingModel::calibrated());

/// Reference design couplings J_0..J_51 as fabricated, rounded to 3 decimals.
[[nodiscard]] const std::vector<double>& reference_couplings();

}  // namespace aptf::lattice
