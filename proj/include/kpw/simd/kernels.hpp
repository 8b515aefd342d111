#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the multiplier and norm code paths.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at runtime when the CPU supports it (override with select()).

namespace kpw::simd {

enum class Backend { Auto, Scalar, Avx2 };

struct Kernels {
    // dst[i] = a[i] * b[i] (complex)
    void (*cmul)(std::complex<double>* dst, const std::complex<double>* a,
                 const std::complex<double>* b, std::size_t n);
    // sum_i w[i] * |z[i]|^p for p in {1, 2}; w may be null (weight 1)
    double (*weighted_abs_sum)(const std::complex<double>* z, const double* w, std::size_t n);
    double (*weighted_abs2_sum)(const std::complex<double>* z, const double* w, std::size_t n);
    // max_i |z[i]|
    double (*max_abs)(const std::complex<double>* z, std::size_t n);
    const char* name;
};

// Active kernel table (dispatch decided on first use, or by select()).
const Kernels& active();

// Force a backend; Backend::Auto restores cpuid-based selection.
// Throws std::invalid_argument if the backend is unavailable on this build/CPU.
void select(Backend b);

std::string backend_name();
bool avx2_available();

extern const Kernels scalar_kernels;
#if defined(KPW_HAVE_AVX2)
extern const Kernels avx2_kernels;
#endif

} // namespace kpw::simd
