#include "aptf/lindblad.hpp"

#include "aptf/error.hpp"
#include "aptf/linalg.hpp"
#include "aptf/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>

namespace aptf::lindblad {

namespace {

CVector vec(const CMatrix& m) { return CVector::Map(m.data(), m.size()); }

CMatrix unvec(const CVector& v, Eigen::Index dim) { return CMatrix::Map(v.data(), dim, dim); }

void check_n_max(int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
}

}  // namespace

DensityMatrix::DensityMatrix(int n_max, CMatrix matrix) : DensityMatrix(n_max, std::move(matrix), true) {}

DensityMatrix DensityMatrix::unchecked(int n_max, CMatrix matrix) { return DensityMatrix(n_max, std::move(matrix), false); }

DensityMatrix::DensityMatrix(int n_max, CMatrix matrix, bool validate) : n_max_(n_max), matrix_(std::move(matrix)) {
    check_n_max(n_max);
    if (matrix_.rows() != dim() || matrix_.cols() != dim()) {
        throw std::invalid_argument("DensityMatrix: expected " + std::to_string(dim()) + "x" + std::to_string(dim()));
    }
    if (!validate) return;
    if (!linalg::is_hermitian(matrix_, 1e-10)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (linalg::min_eigenvalue(matrix_) < -1e-10) throw std::invalid_argument("DensityMatrix: not positive semidefinite");
    if (trace() > 1.0 + 1e-10) throw std::invalid_argument("DensityMatrix: trace exceeds 1");
}

DensityMatrix DensityMatrix::from_state(const fock::TwoModeNState& psi, int n_max) {
    const int n = psi.n_photons();
    if (n > n_max) throw std::invalid_argument("DensityMatrix::from_state: photon number exceeds n_max");
    const int d = (n_max + 1) * (n_max + 1);
    CVector v = CVector::Zero(d);
    for (int k = 0; k <= n; ++k) v((n - k) * (n_max + 1) + k) = psi[k];
    return DensityMatrix(n_max, v * v.adjoint());
}

DensityMatrix DensityMatrix::fock(int n_left, int n_right, int n_max) {
    if (n_left < 0 || n_right < 0 || n_left > n_max || n_right > n_max) {
        throw std::invalid_argument("DensityMatrix::fock: occupation out of range");
    }
    const int d = (n_max + 1) * (n_max + 1);
    CMatrix m = CMatrix::Zero(d, d);
    const int i = n_left * (n_max + 1) + n_right;
    m(i, i) = 1.0;
    return DensityMatrix(n_max, std::move(m));
}

CMatrix lowering(Port port, int n_max) {
    check_n_max(n_max);
    const int m = n_max + 1;
    CMatrix a = CMatrix::Zero(m, m);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const CMatrix id = CMatrix::Identity(m, m);
    return port == Port::left ? linalg::kron(a, id) : linalg::kron(id, a);
}

Liouvillian build_liouvillian(double gamma, int n_max, JumpModel jumps) {
    if (!(gamma > 0.0)) throw std::invalid_argument("build_liouvillian: Gamma must be > 0");
    check_n_max(n_max);
    const CMatrix al = lowering(Port::left, n_max);
    const CMatrix ar = lowering(Port::right, n_max);
    const Eigen::Index d = al.rows();
    const CMatrix id = CMatrix::Identity(d, d);
    const CMatrix h = -kI * gamma * (al.adjoint() * ar + ar.adjoint() * al + al.adjoint() * al + ar.adjoint() * ar);

    CMatrix l = -kI * linalg::kron(id, h) + kI * linalg::kron(h.conjugate(), id);
    if (jumps == JumpModel::independent) {
        l += 2.0 * gamma * (linalg::kron(al.conjugate(), al) + linalg::kron(ar.conjugate(), ar));
    } else {
        const CMatrix c = al + ar;
        l += 2.0 * gamma * linalg::kron(c.conjugate(), c);
    }
    return {n_max, gamma, jumps, std::move(l)};
}

CMatrix apply_liouvillian(const Liouvillian& l, const CMatrix& rho) {
    const Eigen::Index d = rho.rows();
    if (d * d != l.matrix.rows()) throw std::invalid_argument("apply_liouvillian: dimension mismatch");
    return unvec(l.matrix * vec(rho), d);
}

namespace {

CMatrix eigen_propagator(const CMatrix& l, double z) {
    Eigen::ComplexEigenSolver<CMatrix> es(l);
    if (es.info() != Eigen::Success) throw NumericalError("Liouvillian eigensolver did not converge");
    const CMatrix& v = es.eigenvectors();
    Eigen::JacobiSVD<CMatrix> svd(v);
    const RVector& s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
    if (!(cond <= 1e8)) {
        throw NumericalError("Liouvillian is not diagonalizable to working precision (eigenvector condition " +
                             std::to_string(cond) + ")");
    }
    const CVector f = (z * es.eigenvalues()).array().exp().matrix();
    return v * f.asDiagonal() * v.partialPivLu().inverse();
}

}  // namespace

CMatrix propagator(const Liouvillian& l, double z) {
    if (!(z >= 0.0)) throw std::invalid_argument("propagator: z must be >= 0");
    return linalg::expm(l.matrix * z);
}

DensityMatrix evolve_density(const Liouvillian& l, const DensityMatrix& rho0, double z, EvolveMethod method) {
    if (!(z >= 0.0)) throw std::invalid_argument("evolve_density: z must be >= 0");
    if (rho0.n_max() != l.n_max) throw std::invalid_argument("evolve_density: truncation mismatch");
    const int n_max = rho0.n_max();
    for (int nl = 0; nl <= n_max; ++nl) {
        for (int nr = 0; nr <= n_max; ++nr) {
            if (nl + nr > n_max && std::abs(rho0.matrix()(rho0.index(nl, nr), rho0.index(nl, nr))) > 1e-12) {
                throw std::invalid_argument("evolve_density: input populates states above the truncation n_max");
            }
        }
    }
    const Eigen::Index d = rho0.dim();
    const CVector v0 = vec(rho0.matrix());
    CVector v;
    switch (method) {
        case EvolveMethod::scaling_squaring: v = propagator(l, z) * v0; break;
        case EvolveMethod::eigen: v = eigen_propagator(l.matrix, z) * v0; break;
        case EvolveMethod::cross_check: {
            v = propagator(l, z) * v0;
            const CVector w = eigen_propagator(l.matrix, z) * v0;
            const double gap = (v - w).cwiseAbs().maxCoeff();
            if (gap > 1e-6) {
                throw ConsistencyError("evolve_density: eigen and scaling-squaring routes differ by " + std::to_string(gap));
            }
            break;
        }
    }
    return DensityMatrix::unchecked(n_max, linalg::hermitize(unvec(v, d)));
}

double choi_min_eigenvalue(const CMatrix& superop, int dim) {
    const Eigen::Index d = dim;
    if (superop.rows() != d * d || superop.cols() != d * d) throw std::invalid_argument("choi_min_eigenvalue: bad shape");
    CMatrix choi(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            // Image of |i><j|, whose column-stacked index is j * d + i.
            choi.block(i * d, j * d, d, d) = unvec(superop.col(j * d + i), d);
        }
    }
    return linalg::min_eigenvalue(choi);
}

SectorDensity postselect_block(const DensityMatrix& rho, int n_photons) {
    if (n_photons < 0 || n_photons > rho.n_max()) throw std::invalid_argument("postselect_block: N outside truncation");
    const int n = n_photons;
    CMatrix block(n + 1, n + 1);
    for (int r = 0; r <= n; ++r) {
        for (int c = 0; c <= n; ++c) block(r, c) = rho.matrix()(rho.index(n - r, r), rho.index(n - c, c));
    }
    const double tr = block.trace().real();
    if (!(tr >= 1e-300)) throw FullyDissipatedError("postselect_block: sector " + std::to_string(n) + " is empty");
    return {n, linalg::hermitize(block / tr), tr};
}

double purity(const CMatrix& rho) {
    if (std::abs(rho.trace().real() - 1.0) > 1e-8) throw std::invalid_argument("purity: trace must be 1");
    return (rho * rho).trace().real();
}

CMatrix partial_trace(const DensityMatrix& rho, Port keep) {
    const int m = rho.n_max() + 1;
    CMatrix out = CMatrix::Zero(m, m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            for (int t = 0; t < m; ++t) {
                out(a, b) += keep == Port::left ? rho.matrix()(rho.index(a, t), rho.index(b, t))
                                                : rho.matrix()(rho.index(t, a), rho.index(t, b));
            }
        }
    }
    return out;
}

CMatrix partial_trace(const SectorDensity& block, Port keep) {
    const int n = block.n_photons;
    const int m = n + 1;
    CMatrix out = CMatrix::Zero(m, m);
    // Sector ket k is |n-k, k>; the traced mode must match between bra and ket.
    for (int r = 0; r <= n; ++r) {
        for (int c = 0; c <= n; ++c) {
            if (keep == Port::left && r == c) out(n - r, n - c) += block.matrix(r, c);
            if (keep == Port::right && r == c) out(r, c) += block.matrix(r, c);
        }
    }
    return out;
}

double participation_ratio(const CMatrix& reduced) { return 1.0 / purity(reduced); }

double renyi_entropy(const CMatrix& reduced, double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0) throw std::invalid_argument("renyi_entropy: alpha must be > 0 and != 1");
    if (std::abs(reduced.trace().real() - 1.0) > 1e-8) throw std::invalid_argument("renyi_entropy: trace must be 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(linalg::hermitize(reduced), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > 0.0) s += std::pow(lam, alpha);
    }
    return std::log2(s) / (1.0 - alpha);
}

double fidelity(const SectorDensity& block, const fock::TwoModeNState& psi) {
    if (psi.n_photons() != block.n_photons) throw std::invalid_argument("fidelity: photon number mismatch");
    return (psi.amplitudes().adjoint() * block.matrix * psi.amplitudes())(0, 0).real();
}

namespace {

CVector embed(const fock::TwoModeNState& psi, int n_max) {
    if (psi.n_photons() > n_max) throw std::invalid_argument("mixture: photon number exceeds n_max");
    CVector v = CVector::Zero((n_max + 1) * (n_max + 1));
    const int n = psi.n_photons();
    for (int k = 0; k <= n; ++k) v((n - k) * (n_max + 1) + k) = psi[k];
    return v;
}

}  // namespace

DensityMatrix dephased_mixture(const fock::TwoModeNState& a, const fock::TwoModeNState& b, int n_max) {
    const CVector va = embed(a, n_max).normalized();
    const CVector vb = embed(b, n_max).normalized();
    if (std::abs(va.dot(vb)) > 1e-10) throw std::invalid_argument("dephased_mixture: states must be orthogonal");
    return DensityMatrix(n_max, 0.5 * (va * va.adjoint() + vb * vb.adjoint()));
}

DensityMatrix sampled_mixture(const fock::TwoModeNState& a, const fock::TwoModeNState& b, int n_max, int samples,
                              std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("sampled_mixture: samples must be >= 1");
    const CVector va = embed(a, n_max).normalized();
    const CVector vb = embed(b, n_max).normalized();
    auto gen = rng::SplitMix64::stream(seed, 0);
    CMatrix acc = CMatrix::Zero(va.size(), va.size());
    for (int s = 0; s < samples; ++s) {
        const CVector psi = ((va + std::polar(1.0, gen.uniform(0.0, 2.0 * kPi)) * vb) / std::sqrt(2.0)).eval();
        acc += psi * psi.adjoint();
    }
    return DensityMatrix(n_max, linalg::hermitize(acc / static_cast<double>(samples)));
}

}  // namespace aptf::lindblad
