#include "aptf/effective.hpp"

#include "aptf/error.hpp"
#include "aptf/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace aptf::effective {

EffectiveAptHamiltonian::EffectiveAptHamiltonian(const RMatrix& dissipation, int n_photons, double cond_limit)
    : n_photons_(n_photons) {
    if (dissipation.rows() != 2 || dissipation.cols() != 2) throw std::invalid_argument("EffectiveAptHamiltonian: need 2x2");
    if (n_photons < 1) throw std::invalid_argument("EffectiveAptHamiltonian: N must be >= 1");
    matrix_ = -kI * fock::lift_generator(dissipation.cast<cplx>(), n_photons);

    Eigen::ComplexEigenSolver<CMatrix> es(matrix_);
    if (es.info() != Eigen::Success) throw NumericalError("EffectiveAptHamiltonian: eigensolver failed");
    eigenvalues_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
    Eigen::JacobiSVD<CMatrix> svd(vectors_);
    const RVector& s = svd.singularValues();
    const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : INFINITY;
    if (cond <= cond_limit) {
        inverse_ = vectors_.partialPivLu().inverse();
        diagonalized_ = true;
    }
}

CMatrix EffectiveAptHamiltonian::propagator(double z) const {
    if (!(z >= 0.0)) throw std::invalid_argument("EffectiveAptHamiltonian::propagator: z must be >= 0");
    if (!diagonalized_) return linalg::expm(-kI * z * matrix_);
    const CVector factors = (-kI * z * eigenvalues_).array().exp().matrix();
    return vectors_ * factors.asDiagonal() * inverse_;
}

EffectiveAptHamiltonian build_effective(double gamma, int n_photons) {
    if (!(gamma > 0.0)) throw std::invalid_argument("build_effective: Gamma must be > 0");
    return EffectiveAptHamiltonian(RMatrix::Constant(2, 2, gamma), n_photons);
}

EffectiveAptHamiltonian build_effective_asymmetric(double gamma_left, double gamma_right, int n_photons) {
    if (!(gamma_left > 0.0) || !(gamma_right > 0.0)) {
        throw std::invalid_argument("build_effective_asymmetric: rates must be > 0");
    }
    const double cross = std::sqrt(gamma_left * gamma_right);
    RMatrix g(2, 2);
    g << gamma_left, cross, cross, gamma_right;
    return EffectiveAptHamiltonian(g, n_photons);
}

propagate::PostSelectedResult evolve_effective(const EffectiveAptHamiltonian& h, const fock::TwoModeNState& input,
                                               double z) {
    if (input.n_photons() != h.n_photons()) throw std::invalid_argument("evolve_effective: photon number mismatch");
    const CVector out = h.propagator(z) * input.amplitudes();
    const double p = out.squaredNorm();
    if (!(p >= 1e-300)) throw FullyDissipatedError("evolve_effective: state fully dissipated");
    return {fock::TwoModeNState(out / std::sqrt(p)), p};
}

double ww_decay_reference(double gamma, double z) {
    if (!(z >= 0.0)) throw std::invalid_argument("ww_decay_reference: z must be >= 0");
    return std::exp(-gamma * z);
}

CMatrix effective_transfer_2x2(double gamma, double z) {
    // exp(-g z (I + sx)) = e^{-g z} (cosh(g z) I - sinh(g z) sx)
    const double e = std::exp(-gamma * z);
    const double c = e * std::cosh(gamma * z);
    const double s = -e * std::sinh(gamma * z);
    CMatrix t(2, 2);
    t << c, s, s, c;
    return t;
}

}  // namespace aptf::effective
