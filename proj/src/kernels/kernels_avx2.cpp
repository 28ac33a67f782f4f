// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatcher after a CPUID check.
//
// A __m256d holds two interleaved complex doubles [re0, im0, re1, im1].

#include "aptf/kernels.hpp"

#include <immintrin.h>

namespace aptf::simd::avx2 {

namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

// y[0..n) += alpha * x[0..n)
inline void axpy_impl(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(raw(x + i));
        const __m256d x1 = _mm256_loadu_pd(raw(x + i + 2));
        const __m256d s0 = _mm256_permute_pd(x0, 0b0101);
        const __m256d s1 = _mm256_permute_pd(x1, 0b0101);
        // [ar*xr - ai*xi, ar*xi + ai*xr]
        const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, _mm256_mul_pd(ai, s0));
        const __m256d p1 = _mm256_fmaddsub_pd(ar, x1, _mm256_mul_pd(ai, s1));
        _mm256_storeu_pd(raw(y + i), _mm256_add_pd(_mm256_loadu_pd(raw(y + i)), p0));
        _mm256_storeu_pd(raw(y + i + 2), _mm256_add_pd(_mm256_loadu_pd(raw(y + i + 2)), p1));
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d x0 = _mm256_loadu_pd(raw(x + i));
        const __m256d s0 = _mm256_permute_pd(x0, 0b0101);
        const __m256d p0 = _mm256_fmaddsub_pd(ar, x0, _mm256_mul_pd(ai, s0));
        _mm256_storeu_pd(raw(y + i), _mm256_add_pd(_mm256_loadu_pd(raw(y + i)), p0));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    const std::size_t n = a.size();
    __m256d re_acc0 = _mm256_setzero_pd();
    __m256d re_acc1 = _mm256_setzero_pd();
    __m256d im_acc0 = _mm256_setzero_pd();
    __m256d im_acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(raw(a.data() + i));
        const __m256d a1 = _mm256_loadu_pd(raw(a.data() + i + 2));
        const __m256d b0 = _mm256_loadu_pd(raw(b.data() + i));
        const __m256d b1 = _mm256_loadu_pd(raw(b.data() + i + 2));
        re_acc0 = _mm256_fmadd_pd(a0, b0, re_acc0);
        re_acc1 = _mm256_fmadd_pd(a1, b1, re_acc1);
        im_acc0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im_acc0);
        im_acc1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im_acc1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d a0 = _mm256_loadu_pd(raw(a.data() + i));
        const __m256d b0 = _mm256_loadu_pd(raw(b.data() + i));
        re_acc0 = _mm256_fmadd_pd(a0, b0, re_acc0);
        im_acc0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im_acc0);
    }
    alignas(32) double re_lanes[4];
    alignas(32) double im_lanes[4];
    _mm256_store_pd(re_lanes, _mm256_add_pd(re_acc0, re_acc1));
    _mm256_store_pd(im_lanes, _mm256_add_pd(im_acc0, im_acc1));
    // re lanes: ar*br, ai*bi ; im lanes: ar*bi, ai*br
    double re = re_lanes[0] + re_lanes[1] + re_lanes[2] + re_lanes[3];
    double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    axpy_impl(alpha, x.data(), y.data(), x.size());
}

void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        const cplx xc = x[c];
        if (xc == cplx{}) continue;
        axpy_impl(xc, a.data() + c * rows, y.data(), rows);
    }
}

}  // namespace aptf::simd::avx2
