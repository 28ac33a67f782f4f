#include "aptf/linalg.hpp"

#include "aptf/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace aptf::linalg {

namespace {

// Higham (2005) degree-13 Padé coefficients and the theta bound for scaling.
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

double one_norm(const CMatrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

}  // namespace

CMatrix expm(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;
    const double norm = one_norm(a);
    int s = 0;
    if (norm > kTheta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const CMatrix x = a / std::ldexp(1.0, s);

    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix x2 = x * x;
    const CMatrix x4 = x2 * x2;
    const CMatrix x6 = x4 * x2;
    const auto& b = kPade13;
    const CMatrix u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const CMatrix u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const CMatrix v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const CMatrix v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    CMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < s; ++k) r = r * r;
    return r;
}

double hermiticity_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) return INFINITY;
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& a, double tol) { return hermiticity_defect(a) <= tol; }

bool is_unitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    if (u.size() == 0) return true;
    const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
    return out;
}

CMatrix hermitize(const CMatrix& a) { return (a + a.adjoint()) * 0.5; }

double trace_distance(const CMatrix& rho, const CMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw std::invalid_argument("trace_distance: shape mismatch");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(rho - sigma), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const CMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CMatrix expm_scaled(const CMatrix& a, cplx s, double cond_limit) {
    Eigen::ComplexEigenSolver<CMatrix> es(a);
    if (es.info() == Eigen::Success) {
        const CMatrix& v = es.eigenvectors();
        Eigen::JacobiSVD<CMatrix> svd(v);
        const auto& sv = svd.singularValues();
        const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
        if (cond <= cond_limit) {
            const CVector phases = (es.eigenvalues() * s).array().exp().matrix();
            return v * phases.asDiagonal() * v.partialPivLu().inverse();
        }
    }
    return expm(a * s);
}

HermitianExp::HermitianExp(const CMatrix& h) {
    if (!is_hermitian(h)) throw std::invalid_argument("HermitianExp: generator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(h));
    if (es.info() != Eigen::Success) throw NumericalError("HermitianExp: eigensolver failed");
    eigenvalues_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
}

CMatrix HermitianExp::at(double z) const {
    const CVector phases = (kI * z * eigenvalues_.cast<cplx>()).array().exp().matrix();
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

}  // namespace aptf::linalg
