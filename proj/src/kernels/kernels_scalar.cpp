// Scalar reference kernels.

#include "aptf/kernels.hpp"

namespace aptf::simd::scalar {

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        const cplx xc = x[c];
        if (xc == cplx{}) continue;
        axpy(xc, a.subspan(c * rows, rows), y.first(rows));
    }
}

}  // namespace aptf::simd::scalar
