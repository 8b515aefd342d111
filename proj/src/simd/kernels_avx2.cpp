#include "kpw/simd/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// Complex doubles are laid out (re,im) pairs; one __m256d holds two of them.

namespace kpw::simd {

namespace {

inline __m256d cmul2(__m256d a, __m256d b) {
    // (ar*br - ai*bi, ar*bi + ai*br) per 128-bit lane
    __m256d ar = _mm256_movedup_pd(a);                       // ar ar
    __m256d ai = _mm256_permute_pd(a, 0xF);                  // ai ai
    __m256d bsw = _mm256_permute_pd(b, 0x5);                 // bi br
    return _mm256_addsub_pd(_mm256_mul_pd(ar, b), _mm256_mul_pd(ai, bsw));
}

void cmul_avx2(std::complex<double>* dst, const std::complex<double>* a,
               const std::complex<double>* b, std::size_t n) {
    const double* pa = reinterpret_cast<const double*>(a);
    const double* pb = reinterpret_cast<const double*>(b);
    double* pd = reinterpret_cast<double*>(dst);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(pd + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        dst[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

inline __m256d abs2_4(const double* p0, const double* p1) {
    // p0, p1: two __m256d of (re,im,re,im); returns |z|^2 for the 4 complexes
    __m256d a = _mm256_loadu_pd(p0);
    __m256d b = _mm256_loadu_pd(p1);
    __m256d a2 = _mm256_mul_pd(a, a);
    __m256d b2 = _mm256_mul_pd(b, b);
    // hadd pairs within 128-bit lanes -> (z0, z2, z1, z3); restore order
    return _mm256_permute4x64_pd(_mm256_hadd_pd(a2, b2), 0xD8);
}

double weighted_abs2_sum_avx2(const std::complex<double>* z, const double* w, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d m2 = abs2_4(pz + 2 * i, pz + 2 * i + 4);
        if (w) m2 = _mm256_mul_pd(m2, _mm256_loadu_pd(w + i));
        acc = _mm256_add_pd(acc, m2);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double m2 = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
        sum += w ? w[i] * m2 : m2;
    }
    return sum;
}

double weighted_abs_sum_avx2(const std::complex<double>* z, const double* w, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d m = _mm256_sqrt_pd(abs2_4(pz + 2 * i, pz + 2 * i + 4));
        if (w) m = _mm256_mul_pd(m, _mm256_loadu_pd(w + i));
        acc = _mm256_add_pd(acc, m);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) {
        const double m = std::sqrt(z[i].real() * z[i].real() + z[i].imag() * z[i].imag());
        sum += w ? w[i] * m : m;
    }
    return sum;
}

double max_abs_avx2(const std::complex<double>* z, std::size_t n) {
    const double* pz = reinterpret_cast<const double*>(z);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_max_pd(acc, abs2_4(pz + 2 * i, pz + 2 * i + 4));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m2 = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > m2) m2 = lanes[k];
    for (; i < n; ++i) {
        const double v = z[i].real() * z[i].real() + z[i].imag() * z[i].imag();
        if (v > m2) m2 = v;
    }
    return std::sqrt(m2);
}

} // namespace

const Kernels avx2_kernels = {cmul_avx2, weighted_abs_sum_avx2, weighted_abs2_sum_avx2,
                              max_abs_avx2, "avx2"};

} // namespace kpw::simd
