// Runtime selection between scalar and AVX2 kernels.

#include "aptf/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace aptf::simd {

namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(APTF_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() noexcept {
    if (const char* env = std::getenv("APTF_SIMD")) {
        if (std::string_view(env) == "scalar") return Isa::scalar;
    }
    return cpu_has_avx2_fma() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    return isa == Isa::scalar || cpu_has_avx2_fma();
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::invalid_argument("force_isa: ISA not supported on this CPU");
    current().store(isa, std::memory_order_relaxed);
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dotc: size mismatch");
#if defined(APTF_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) return avx2::dotc(a, b);
#endif
    return scalar::dotc(a, b);
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
#if defined(APTF_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) return avx2::axpy(alpha, x, y);
#endif
    scalar::axpy(alpha, x, y);
}

void gemv(std::span<const cplx> a, std::size_t rows, std::size_t cols,
          std::span<const cplx> x, std::span<cplx> y) {
    if (a.size() != rows * cols || x.size() != cols || y.size() != rows) {
        throw std::invalid_argument("gemv: size mismatch");
    }
#if defined(APTF_HAVE_AVX2_KERNELS)
    if (active_isa() == Isa::avx2) return avx2::gemv(a, rows, cols, x, y);
#endif
    scalar::gemv(a, rows, cols, x, y);
}

double norm2(std::span<const cplx> a) { return std::sqrt(dotc(a, a).real()); }

}  // namespace aptf::simd
