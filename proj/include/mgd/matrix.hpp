#pragma once

#include <complex>
#include <vector>

namespace mgd {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major.  Small dimensions only (the
// library targets operators on spaces of dimension <= 16 or so); no
// attempt is made at blocking or allocation reuse.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<cplx> entries);

    static ComplexMatrix identity(int dim);

    int dim() const noexcept { return dim_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
    cplx* data() noexcept { return a_.data(); }
    const cplx* data() const noexcept { return a_.data(); }
    size_t size() const noexcept { return a_.size(); }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    bool is_finite() const;
    // max |U U^dag - I| in Frobenius norm
    double unitarity_defect() const;

  private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// |v><w| outer product of two kets
ComplexMatrix outer(const std::vector<cplx>& v, const std::vector<cplx>& w);

} // namespace mgd
