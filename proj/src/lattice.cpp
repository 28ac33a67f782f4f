#include "aptf/lattice.hpp"

#include "aptf/kernels.hpp"
#include "aptf/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace aptf::lattice {

double BathSpec::level_coupling() const { return std::sqrt(gamma * level_spacing() / kPi); }

void BathSpec::validate() const {
    if (!(half_bandwidth > 0.0)) throw std::invalid_argument("BathSpec: half_bandwidth must be > 0");
    if (half_levels < 1) throw std::invalid_argument("BathSpec: half_levels must be >= 1");
    if (!(gamma >= 0.0)) throw std::invalid_argument("BathSpec: gamma must be >= 0");
}

CouplingChain::CouplingChain(RVector eps, RVector j) : detunings(std::move(eps)), couplings(std::move(j)) {
    if (detunings.size() < 1) throw std::invalid_argument("CouplingChain: need at least one site");
    if (couplings.size() != detunings.size() - 1) {
        throw std::invalid_argument("CouplingChain: need exactly sites - 1 couplings");
    }
    for (Eigen::Index i = 0; i < couplings.size(); ++i) {
        if (!(couplings(i) >= 0.0)) throw std::invalid_argument("CouplingChain: couplings must be >= 0");
    }
}

CouplingChain CouplingChain::uniform_detuning(const std::vector<double>& j) {
    RVector c = RVector::Map(j.data(), static_cast<Eigen::Index>(j.size()));
    return CouplingChain(RVector::Zero(c.size() + 1), std::move(c));
}

CouplingChain CouplingChain::slice(int first, int count) const {
    if (first < 0 || count < 1 || first + count > sites()) throw std::invalid_argument("CouplingChain::slice: out of range");
    return CouplingChain(detunings.segment(first, count), couplings.segment(first, count - 1));
}

CMatrix CouplingChain::hamiltonian() const {
    const int n = sites();
    CMatrix h = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) h(i, i) = detunings(i);
    for (int i = 0; i + 1 < n; ++i) h(i, i + 1) = h(i + 1, i) = couplings(i);
    return h;
}

CMatrix build_ww_star(const BathSpec& spec) {
    spec.validate();
    const int k_max = spec.half_levels;
    const int n = spec.n_levels() + 1;
    const double delta = spec.level_spacing();
    const double w = spec.level_coupling();
    CMatrix h = CMatrix::Zero(n, n);
    for (int k = -k_max; k <= k_max; ++k) {
        const int idx = k + k_max + 1;
        h(idx, idx) = k * delta;
        h(0, idx) = h(idx, 0) = w;
    }
    return h;
}

namespace {

// Remove components along basis columns 0..count-1 (classical Gram-Schmidt).
void project_out(const CMatrix& basis, int count, CVector& p) {
    const auto n = static_cast<std::size_t>(basis.rows());
    for (int j = 0; j < count; ++j) {
        std::span<const cplx> vj(basis.col(j).data(), n);
        const cplx overlap = simd::dotc(vj, simd::view(std::as_const(p)));
        simd::axpy(-overlap, vj, simd::view(p));
    }
}

// First canonical basis vector with a usable component orthogonal to the basis.
CVector restart_vector(const CMatrix& basis, int count) {
    const Eigen::Index n = basis.rows();
    for (Eigen::Index e = 0; e < n; ++e) {
        CVector p = CVector::Unit(n, e);
        project_out(basis, count, p);
        project_out(basis, count, p);
        const double norm = simd::norm2(simd::view(std::as_const(p)));
        if (norm > 1e-6) return p / norm;
    }
    throw std::logic_error("lanczos: no orthogonal restart vector (basis is complete)");
}

}  // namespace

LanczosResult lanczos_tridiagonalize(const CMatrix& h, const CVector& v1, int m, LanczosOptions options) {
    const Eigen::Index n = h.rows();
    if (h.cols() != n) throw std::invalid_argument("lanczos: matrix must be square");
    if (v1.size() != n) throw std::invalid_argument("lanczos: start vector size mismatch");
    if (m < 1 || m > n) throw std::invalid_argument("lanczos: need 1 <= m <= dim(H)");
    if (std::abs(v1.norm() - 1.0) > 1e-10) throw std::invalid_argument("lanczos: start vector must be normalized");
    if (!linalg::is_hermitian(h, 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
        throw std::invalid_argument("lanczos: matrix must be Hermitian");
    }

    const double h_norm = h.cwiseAbs().colwise().sum().maxCoeff();
    const double breakdown = options.breakdown_tolerance * std::max(h_norm, 1e-300);
    const auto un = static_cast<std::size_t>(n);

    CMatrix basis(n, m);
    basis.col(0) = v1;
    RVector eps(m);
    RVector c(m - 1);
    LanczosResult result;
    CVector p(n);

    for (int i = 0; i < m; ++i) {
        std::span<const cplx> vi(basis.col(i).data(), un);
        simd::gemv(simd::view(h), un, un, vi, simd::view(p));
        eps(i) = simd::dotc(vi, simd::view(std::as_const(p))).real();
        simd::axpy(-eps(i), vi, simd::view(p));
        if (i > 0) simd::axpy(-c(i - 1), std::span<const cplx>(basis.col(i - 1).data(), un), simd::view(p));
        if (options.reorthogonalize) {
            project_out(basis, i + 1, p);
            project_out(basis, i + 1, p);
        }
        if (i + 1 == m) break;

        const double norm = simd::norm2(simd::view(std::as_const(p)));
        if (norm < breakdown) {
            c(i) = 0.0;
            result.breakdown_steps.push_back(i + 1);
            basis.col(i + 1) = restart_vector(basis, i + 1);
        } else {
            c(i) = norm;
            basis.col(i + 1) = p / norm;
        }
    }

    const CMatrix gram = basis.adjoint() * basis - CMatrix::Identity(m, m);
    result.orthogonality_drift = gram.cwiseAbs().maxCoeff();
    result.chain = CouplingChain(std::move(eps), std::move(c));
    return result;
}

CouplingChain design_chain(const BathSpec& spec, int n_couplings) {
    if (n_couplings < 1 || n_couplings + 1 > spec.n_levels() + 1) {
        throw std::invalid_argument("design_chain: n_couplings out of range");
    }
    const CMatrix star = build_ww_star(spec);
    const CVector anchor = CVector::Unit(star.rows(), 0);
    return lanczos_tridiagonalize(star, anchor, n_couplings + 1).chain;
}

AptLattice AptLattice::from_design(const CouplingChain& design, int chain_sites, std::optional<double> j_left,
                                   std::optional<double> j_right, double delta) {
    if (chain_sites < 1 || chain_sites + 1 > design.sites()) {
        throw std::invalid_argument("AptLattice::from_design: design chain too short for " +
                                    std::to_string(chain_sites) + " environment sites");
    }
    AptLattice lat;
    lat.chain = design.slice(1, chain_sites);
    lat.j_left = j_left.value_or(design.couplings(0));
    lat.j_right = j_right.value_or(design.couplings(0));
    lat.delta = delta;
    return lat;
}

CMatrix AptLattice::hamiltonian() const { return build_apt_lattice(chain, j_left, j_right, delta); }

CMatrix build_apt_lattice(const CouplingChain& chain, double j_left, double j_right, double delta) {
    if (chain.sites() < 1) throw std::invalid_argument("build_apt_lattice: empty chain");
    if (!(j_left > 0.0) || !(j_right > 0.0)) throw std::invalid_argument("build_apt_lattice: J_L, J_R must be > 0");
    const int n = chain.sites() + 2;
    CMatrix h = CMatrix::Zero(n, n);
    h(0, 0) = delta;
    h(1, 1) = delta;
    h(0, 2) = h(2, 0) = j_left;
    h(1, 2) = h(2, 1) = j_right;
    h.bottomRightCorner(n - 2, n - 2) = chain.hamiltonian();
    return h;
}

AptLattice default_apt_lattice(int chain_sites, const BathSpec& spec) {
    return AptLattice::from_design(design_chain(spec, chain_sites), chain_sites);
}

SpacingModel SpacingModel::calibrated() {
    constexpr double d_far = 20.0, j_far = 0.8;
    constexpr double d_near = 14.3, j_near = 2.3;
    const double d0 = (d_far - d_near) / std::log(j_near / j_far);
    return SpacingModel{j_far * std::exp(d_far / d0), d0};
}

SpacingResult coupling_to_spacing(double j, const SpacingModel& model) {
    if (!(j > 0.0)) throw std::invalid_argument("coupling_to_spacing: coupling must be > 0");
    return {model.decay_length * std::log(model.amplitude / j), j < model.valid_min || j > model.valid_max};
}

SpacingResult spacing_to_coupling(double d_um, const SpacingModel& model) {
    const double j = model.amplitude * std::exp(-d_um / model.decay_length);
    return {j, j < model.valid_min || j > model.valid_max};
}

const std::vector<double>& reference_couplings() {
    static const std::vector<double> table = [] {
        std::vector<double> t = {0.798, 2.309, 2.066, 2.028, 2.016, 2.010, 2.007, 2.005, 2.004,
                                 2.003, 2.003, 2.002, 2.002, 2.001, 2.001, 2.001, 2.001};
        t.insert(t.end(), 7, 2.001);   // n = 17..23
        t.insert(t.end(), 28, 2.000);  // n = 24..51
        return t;
    }();
    return table;
}

}  // namespace aptf::lattice
