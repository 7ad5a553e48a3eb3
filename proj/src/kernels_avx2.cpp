// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma on x86-64; everywhere else it provides a stub returning
// "unavailable".  Keep all intrinsics local to this file.
#include "mgd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace mgd::kernels {

namespace {

void daxpy_avx2(std::size_t n, double a, const double* x, double* y) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, xv, yv));
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

double ddot_avx2(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d yv = _mm256_loadu_pd(y + i);
        acc = _mm256_fmadd_pd(xv, yv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

// Complex numbers are interleaved (re, im); one __m256d holds two of them.
void zaxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d xsw = _mm256_permute_pd(xv, 0x5); // swap re/im in each pair
        // lane 2k:   ar*re - ai*im,  lane 2k+1: ar*im + ai*re
        __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xsw));
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
    }
    if (i < n) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
    }
}

cplx zdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
    const double* xd = reinterpret_cast<const double*>(x);
    const double* yd = reinterpret_cast<const double*>(y);
    __m256d acc_sym = _mm256_setzero_pd();  // xr*yr / xi*yi lanes
    __m256d acc_asym = _mm256_setzero_pd(); // xi*yr / xr*yi lanes
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d yv = _mm256_loadu_pd(yd + 2 * i);
        __m256d xsw = _mm256_permute_pd(xv, 0x5);
        acc_sym = _mm256_fmadd_pd(xv, yv, acc_sym);
        acc_asym = _mm256_fmadd_pd(xsw, yv, acc_asym);
    }
    alignas(32) double s[4], t[4];
    _mm256_store_pd(s, acc_sym);
    _mm256_store_pd(t, acc_asym);
    double re = s[0] + s[1] + s[2] + s[3];
    double im = (t[1] + t[3]) - (t[0] + t[2]); // xr*yi - xi*yr
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

const Ops kAvx2Ops = {"avx2", daxpy_avx2, ddot_avx2, zaxpy_avx2, zdotc_avx2};

} // namespace

const Ops* avx2_ops() {
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &kAvx2Ops : nullptr;
}

} // namespace mgd::kernels

#else // no AVX2 at compile time

namespace mgd::kernels {
const Ops* avx2_ops() { return nullptr; }
} // namespace mgd::kernels

#endif
