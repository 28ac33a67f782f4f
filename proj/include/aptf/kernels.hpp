// kernels.hpp: complex BLAS-1/2 kernels with runtime ISA selection
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant compiled in a separate translation unit. The active variant
// is chosen once per process from CPUID; setting APTF_SIMD=scalar in the
// environment pins the reference path. Both variants are public so tests can
// check them against each other.

#pragma once

#include "aptf/types.hpp"

#include <cstddef>
#include <span>

namespace aptf::simd {

enum class Isa { scalar, avx2 };

[[nodiscard]] Isa active_isa() noexcept;
[[nodiscard]] const char* isa_name(Isa isa) noexcept;
[[nodiscard]] bool isa_available(Isa isa) noexcept;
/// Override the dispatch choice. Throws std::invalid_argument if unsupported.
void force_isa(Isa isa);

/// sum_i conj(a_i) * b_i
[[nodiscard]] cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
/// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
/// y = A x for a column-major rows x cols matrix stored contiguously.
void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y);
[[nodiscard]] double norm2(std::span<const cplx> a);

namespace scalar {
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y);
}  // namespace scalar

#if defined(APTF_HAVE_AVX2_KERNELS)
namespace avx2 {
cplx dotc(std::span<const cplx> a, std::span<const cplx> b);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y);
}  // namespace avx2
#endif

// Eigen adapters.
inline std::span<const cplx> view(const CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<cplx> view(CVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<const cplx> view(const CMatrix& m) {
    return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace aptf::simd
