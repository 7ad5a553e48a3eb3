#include "mgd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace mgd::kernels {

namespace {

void daxpy_scalar(std::size_t n, double a, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

double ddot_scalar(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i] * y[i];
    return s;
}

void zaxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

cplx zdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

const Ops kScalarOps = {"scalar", daxpy_scalar, ddot_scalar, zaxpy_scalar, zdotc_scalar};

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_default() {
    if (const char* env = std::getenv("MGD_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0)
            return &kScalarOps;
        if (std::strcmp(env, "avx2") == 0 && avx2_ops() != nullptr)
            return avx2_ops();
        // "auto" or unrecognized value falls through to detection
    }
    if (const Ops* v = avx2_ops())
        return v;
    return &kScalarOps;
}

} // namespace

const Ops& scalar_ops() { return kScalarOps; }

bool avx2_available() { return avx2_ops() != nullptr; }

const Ops& active() {
    const Ops* cur = g_active.load(std::memory_order_acquire);
    if (cur == nullptr) {
        cur = pick_default();
        g_active.store(cur, std::memory_order_release);
    }
    return *cur;
}

Backend current_backend() {
    return &active() == &kScalarOps ? Backend::scalar : Backend::avx2;
}

bool set_backend(Backend b) {
    if (b == Backend::scalar) {
        g_active.store(&kScalarOps, std::memory_order_release);
        return true;
    }
    if (const Ops* v = avx2_ops()) {
        g_active.store(v, std::memory_order_release);
        return true;
    }
    return false;
}

} // namespace mgd::kernels
