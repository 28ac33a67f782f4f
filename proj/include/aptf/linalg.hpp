// linalg.hpp: matrix functions shared across modules

#pragma once

#include "aptf/types.hpp"

namespace aptf::linalg {

/// exp(A) by scaling and squaring with a degree-13 Padé approximant.
[[nodiscard]] CMatrix expm(const CMatrix& a);

[[nodiscard]] bool is_hermitian(const CMatrix& a, double tol = 1e-10);
[[nodiscard]] bool is_unitary(const CMatrix& u, double tol = 1e-10);

/// max |A - A^H| entry.
[[nodiscard]] double hermiticity_defect(const CMatrix& a);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
[[nodiscard]] CMatrix kron(const CMatrix& a, const CMatrix& b);

/// (A + A^H) / 2
[[nodiscard]] CMatrix hermitize(const CMatrix& a);

/// Half the nuclear norm of (rho - sigma). Both inputs Hermitian.
[[nodiscard]] double trace_distance(const CMatrix& rho, const CMatrix& sigma);

/// Smallest eigenvalue of a Hermitian matrix.
[[nodiscard]] double min_eigenvalue(const CMatrix& hermitian);

/// exp(s * A) for a general square matrix: eigendecomposition when the
/// eigenvector basis is well conditioned (cond <= cond_limit), otherwise
/// scaling and squaring.
[[nodiscard]] CMatrix expm_scaled(const CMatrix& a, cplx s, double cond_limit = 1e8);

/// Cached eigendecomposition of a Hermitian generator; evaluates exp(i H z).
class HermitianExp {
public:
    explicit HermitianExp(const CMatrix& h);
    [[nodiscard]] CMatrix at(double z) const;
    [[nodiscard]] const RVector& eigenvalues() const noexcept { return eigenvalues_; }
    [[nodiscard]] const CMatrix& eigenvectors() const noexcept { return vectors_; }
    [[nodiscard]] Eigen::Index dim() const noexcept { return eigenvalues_.size(); }

private:
    RVector eigenvalues_;
    CMatrix vectors_;
};

}  // namespace aptf::linalg
