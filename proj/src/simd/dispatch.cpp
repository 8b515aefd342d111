#include "kpw/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kpw::simd {

bool avx2_available() {
#if defined(KPW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

const Kernels* pick_auto() {
#if defined(KPW_HAVE_AVX2)
    if (avx2_available()) {
        // honor a process-wide override, e.g. KPW_SIMD=scalar for debugging
        const char* env = std::getenv("KPW_SIMD");
        if (!env || std::string(env) != "scalar") return &avx2_kernels;
    }
#endif
    return &scalar_kernels;
}

std::atomic<const Kernels*> g_active{nullptr};

} // namespace

const Kernels& active() {
    const Kernels* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        k = pick_auto();
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void select(Backend b) {
    switch (b) {
    case Backend::Auto:
        g_active.store(pick_auto(), std::memory_order_release);
        return;
    case Backend::Scalar:
        g_active.store(&scalar_kernels, std::memory_order_release);
        return;
    case Backend::Avx2:
#if defined(KPW_HAVE_AVX2)
        if (avx2_available()) {
            g_active.store(&avx2_kernels, std::memory_order_release);
            return;
        }
#endif
        throw std::invalid_argument("simd backend avx2 not available on this machine");
    }
    throw std::invalid_argument("unknown simd backend");
}

std::string backend_name() { return active().name; }

} // namespace kpw::simd
