#include "mgd/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgd/errors.hpp"
#include "mgd/kernels.hpp"

namespace mgd {

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    const int d = m.dim();
    ComplexMatrix r(d);
    for (int i = 0; i < d; ++i) {
        r(i, i) = cplx(m(i, i).real(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            r(i, j) = v;
            r(j, i) = std::conj(v);
        }
    }
    return r;
}

double offdiagonal_mass(const ComplexMatrix& a) {
    const int d = a.dim();
    double s = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
    if (m.dim() < 1)
        throw validation_error("operator dimension must be at least 1");
    if (!m.is_finite())
        throw validation_error("operator has non-finite entries");
    mat_ = symmetrized(m);
}

HermitianOperator::HermitianOperator(int dim, const std::vector<cplx>& entries)
    : HermitianOperator(ComplexMatrix(dim, entries)) {}

HermitianOperator HermitianOperator::zero(int dim) {
    return trusted(ComplexMatrix(dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
    return trusted(ComplexMatrix::identity(dim));
}

HermitianOperator HermitianOperator::scaled_identity(int dim, double s) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = s;
    return trusted(std::move(m));
}

double HermitianOperator::trace() const {
    return mat_.trace().real();
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
    mat_ += o.mat_;
    return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& o) {
    mat_ -= o.mat_;
    return *this;
}

HermitianOperator& HermitianOperator::scale(double s) {
    mat_ *= cplx(s, 0.0);
    return *this;
}

HermitianOperator& HermitianOperator::axpy(double a, const HermitianOperator& x) {
    if (x.dim() != dim())
        throw validation_error("operator dimension mismatch in axpy");
    kernels::active().zaxpy(mat_.size(), cplx(a, 0.0), x.data(), mat_.data());
    return *this;
}

HermitianOperator& HermitianOperator::shift(double s) {
    for (int i = 0; i < dim(); ++i)
        mat_(i, i) += s;
    return *this;
}

HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    a += b;
    return a;
}

HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    a -= b;
    return a;
}

HermitianOperator scaled(const HermitianOperator& a, double s) {
    HermitianOperator r = a;
    r.scale(s);
    return r;
}

HermitianOperator conjugate(const ComplexMatrix& u, const HermitianOperator& m) {
    if (u.dim() != m.dim())
        throw validation_error("operator dimension mismatch in conjugation");
    return HermitianOperator((u * m.matrix()) * u.adjoint());
}

HermitianOperator dyad(const std::vector<cplx>& v) {
    return HermitianOperator(outer(v, v));
}

std::vector<cplx> Spectrum::vector(int k) const {
    const int d = vectors.dim();
    std::vector<cplx> v(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        v[i] = vectors(i, k);
    return v;
}

Spectrum eig(const HermitianOperator& m) {
    const int d = m.dim();
    ComplexMatrix a = m.matrix();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double fnorm = a.frobenius_norm();
    const double stop = 1e-14 * fnorm;
    const double skip = stop / (static_cast<double>(d) * d + 1.0);
    const int max_sweeps = 100;

    double off = offdiagonal_mass(a);
    int sweep = 0;
    while (off > stop) {
        if (sweep++ >= max_sweeps)
            throw solver_error("eigensolver did not converge within 100 sweeps", off);
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx b = a(p, q);
                const double absb = std::abs(b);
                if (absb <= skip)
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * absb);
                // smaller-magnitude root of t^2 + 2*zeta*t - 1 = 0
                const double t = 1.0 / (zeta + std::copysign(std::sqrt(1.0 + zeta * zeta), zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (t * c) * (b / absb);
                const cplx sc = std::conj(s);

                a(p, p) = cplx(app - t * absb, 0.0);
                a(q, q) = cplx(aqq + t * absb, 0.0);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < d; ++k) {
                    if (k == p || k == q)
                        continue;
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - sc * akq;
                    a(k, q) = s * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                for (int k = 0; k < d; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - sc * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = offdiagonal_mass(a);
    }

    std::vector<int> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return a(x, x).real() > a(y, y).real(); });

    Spectrum sp;
    sp.eigenvalues.resize(static_cast<size_t>(d));
    sp.vectors = ComplexMatrix(d);
    for (int k = 0; k < d; ++k) {
        const int src = order[static_cast<size_t>(k)];
        sp.eigenvalues[static_cast<size_t>(k)] = a(src, src).real();
        // Fix the global phase: largest-magnitude entry made real nonnegative.
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < d; ++i) {
            const double mag = std::norm(v(i, src));
            if (mag > best) {
                best = mag;
                imax = i;
            }
        }
        const cplx pivot = v(imax, src);
        const double pmag = std::abs(pivot);
        const cplx phase = pmag > 0.0 ? std::conj(pivot) / pmag : cplx(1.0, 0.0);
        for (int i = 0; i < d; ++i)
            sp.vectors(i, k) = phase * v(i, src);
    }
    return sp;
}

PsdCheck is_psd(const HermitianOperator& m, double tol) {
    const Spectrum sp = eig(m);
    const double lmin = sp.min_eigenvalue();
    return {lmin >= -tol * std::max(1.0, m.frobenius_norm()), lmin};
}

bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b, double tol) {
    if (a.dim() != b.dim())
        throw validation_error("operator dimension mismatch in order comparison");
    return is_psd(b - a, tol).psd;
}

double trace_product(const HermitianOperator& m, const HermitianOperator& n) {
    if (m.dim() != n.dim())
        throw validation_error("operator dimension mismatch in trace product");
    // Tr(M N) = sum_ij conj(N_ij) M_ij for Hermitian N.
    const cplx t = kernels::active().zdotc(n.size(), n.data(), m.data());
    const double scale = std::max(1.0, m.frobenius_norm() * n.frobenius_norm());
    if (std::abs(t.imag()) > 1e-10 * scale)
        throw validation_error("trace product has a non-negligible imaginary part");
    return t.real();
}

std::vector<double> hermitian_to_rvec(const HermitianOperator& m) {
    const int d = m.dim();
    std::vector<double> v(static_cast<size_t>(d) * d);
    const double rt2 = std::sqrt(2.0);
    size_t k = 0;
    for (int i = 0; i < d; ++i)
        v[k++] = m(i, i).real();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            v[k++] = rt2 * m(i, j).real();
            v[k++] = rt2 * m(i, j).imag();
        }
    return v;
}

HermitianOperator rvec_to_hermitian(int dim, const std::vector<double>& v) {
    if (v.size() != static_cast<size_t>(dim) * dim)
        throw validation_error("real vector length does not match dimension");
    ComplexMatrix m(dim);
    const double inv = 1.0 / std::sqrt(2.0);
    size_t k = 0;
    for (int i = 0; i < dim; ++i)
        m(i, i) = v[k++];
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const double re = v[k++] * inv;
            const double im = v[k++] * inv;
            m(i, j) = cplx(re, im);
            m(j, i) = cplx(re, -im);
        }
    return HermitianOperator(std::move(m));
}

} // namespace mgd
