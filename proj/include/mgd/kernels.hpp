#pragma once

#include <complex>
#include <cstddef>

// Low-level array kernels behind the dense linear algebra layer.
//
// Scalar reference implementations always exist.  On x86-64 an AVX2+FMA
// variant is compiled in and selected at runtime when the CPU supports it.
// The backend can be forced with the MGD_KERNELS environment variable
// ("scalar", "avx2", "auto") or programmatically via set_backend(); the
// choice is made once per process so results are deterministic.
namespace mgd::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

struct Ops {
    const char* name;
    // y[i] += a * x[i]
    void (*daxpy)(std::size_t n, double a, const double* x, double* y);
    // sum_i x[i] * y[i]
    double (*ddot)(std::size_t n, const double* x, const double* y);
    // y[i] += a * x[i] (complex)
    void (*zaxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
    // sum_i conj(x[i]) * y[i]
    cplx (*zdotc)(std::size_t n, const cplx* x, const cplx* y);
};

const Ops& scalar_ops();
const Ops* avx2_ops(); // nullptr when unavailable on this build/CPU
bool avx2_available();

// Active table.  First call decides the backend (MGD_KERNELS honored there).
const Ops& active();
Backend current_backend();
bool set_backend(Backend b); // false if the requested backend is unavailable

} // namespace mgd::kernels
