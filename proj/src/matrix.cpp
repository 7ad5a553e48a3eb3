#include "mgd/matrix.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "mgd/errors.hpp"
#include "mgd/kernels.hpp"

namespace mgd {

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (dim < 1 || a_.size() != static_cast<size_t>(dim) * dim)
        throw validation_error("matrix storage does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    const cplx s = kernels::active().zdotc(a_.size(), a_.data(), a_.data());
    return std::sqrt(s.real());
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (o.dim_ != dim_)
        throw validation_error("matrix dimension mismatch in +=");
    kernels::active().zaxpy(a_.size(), 1.0, o.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (o.dim_ != dim_)
        throw validation_error("matrix dimension mismatch in -=");
    kernels::active().zaxpy(a_.size(), -1.0, o.a_.data(), a_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_)
        v *= s;
    return *this;
}

bool ComplexMatrix::is_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

double ComplexMatrix::unitarity_defect() const {
    ComplexMatrix p = (*this) * adjoint();
    for (int i = 0; i < dim_; ++i)
        p(i, i) -= 1.0;
    return p.frobenius_norm();
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw validation_error("matrix dimension mismatch in product");
    const int d = a.dim();
    ComplexMatrix c(d);
    // Row i of C accumulates A(i,k) * row k of B; the axpy kernel carries the
    // inner loop.
    const auto& ops = kernels::active();
    for (int i = 0; i < d; ++i) {
        cplx* crow = c.data() + static_cast<size_t>(i) * d;
        for (int k = 0; k < d; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0))
                continue;
            ops.zaxpy(static_cast<size_t>(d), aik, b.data() + static_cast<size_t>(k) * d, crow);
        }
    }
    return c;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix d = a;
    d -= b;
    return d.frobenius_norm();
}

ComplexMatrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w) {
    if (v.size() != w.size() || v.empty())
        throw validation_error("outer product requires two kets of equal nonzero length");
    const int d = static_cast<int>(v.size());
    ComplexMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            m(i, j) = v[i] * std::conj(w[j]);
    return m;
}

} // namespace mgd
