#include "kpw/simd/kernels.hpp"

#include <cmath>

namespace kpw::simd {

namespace {

void cmul_scalar(std::complex<double>* dst, const std::complex<double>* a,
                 const std::complex<double>* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        dst[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

double weighted_abs_sum_scalar(const std::complex<double>* z, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::sqrt(z[i].real() * z[i].real() + z[i].imag() * z[i].imag());
        acc += w ? w[i] * m : m;
    }
    return acc;
}

double weighted_abs2_sum_scalar(const std::complex<double>* z, const double* w, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m2 = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
        acc += w ? w[i] * m2 : m2;
    }
    return acc;
}

double max_abs_scalar(const std::complex<double>* z, std::size_t n) {
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
        if (v > m2) m2 = v;
    }
    return std::sqrt(m2);
}

} // namespace

const Kernels scalar_kernels = {cmul_scalar, weighted_abs_sum_scalar, weighted_abs2_sum_scalar,
                                max_abs_scalar, "scalar"};

} // namespace kpw::simd
