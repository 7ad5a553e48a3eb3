#pragma once

#include <vector>

#include "mgd/matrix.hpp"

namespace mgd {

// Hermitian operator on a d-dimensional complex space.  Construction
// symmetrizes the input, M <- (M + M^dag)/2, and rejects non-finite
// entries, so stored data is exactly conjugate-symmetric.
//
// Tolerances in this module are relative to max(1, ||M||_F).
class HermitianOperator {
  public:
    HermitianOperator() = default;
    explicit HermitianOperator(const ComplexMatrix& m);
    HermitianOperator(int dim, const std::vector<cplx>& entries);

    static HermitianOperator zero(int dim);
    static HermitianOperator identity(int dim);
    static HermitianOperator scaled_identity(int dim, double s);

    int dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return mat_; }
    const cplx& operator()(int i, int j) const { return mat_(i, j); }
    const cplx* data() const noexcept { return mat_.data(); }
    size_t size() const noexcept { return mat_.size(); }

    double trace() const;
    double frobenius_norm() const { return mat_.frobenius_norm(); }

    // Entrywise operations preserve exact conjugate symmetry, so these skip
    // the symmetrization pass.
    HermitianOperator& operator+=(const HermitianOperator& o);
    HermitianOperator& operator-=(const HermitianOperator& o);
    HermitianOperator& scale(double s);
    // *this += a * x, a real
    HermitianOperator& axpy(double a, const HermitianOperator& x);
    // *this += s * I
    HermitianOperator& shift(double s);

  private:
    struct trusted_tag {};
    HermitianOperator(trusted_tag, ComplexMatrix m) : mat_(std::move(m)) {}
    static HermitianOperator trusted(ComplexMatrix m) {
        return HermitianOperator(trusted_tag{}, std::move(m));
    }

    ComplexMatrix mat_;

    friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b);
    friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b);
    friend HermitianOperator scaled(const HermitianOperator& a, double s);
};

HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b);
HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b);
HermitianOperator scaled(const HermitianOperator& a, double s);

// U M U^dag (result symmetrized).
HermitianOperator conjugate(const ComplexMatrix& u, const HermitianOperator& m);

// |v><v| from a ket (not necessarily normalized).
HermitianOperator dyad(const std::vector<cplx>& v);

// Eigendecomposition, eigenvalues descending.  Column k of `vectors` is the
// eigenvector for eigenvalues[k]; each column's largest-magnitude entry is
// made real nonnegative so the output is deterministic.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix vectors;

    std::vector<cplx> vector(int k) const;
    double min_eigenvalue() const { return eigenvalues.back(); }
    double max_eigenvalue() const { return eigenvalues.front(); }
};

// Cyclic Jacobi, capped at 100 sweeps; converged when the off-diagonal
// Frobenius mass falls below 1e-14 * ||M||_F.  Throws solver_error on
// non-convergence (carrying the residual).
Spectrum eig(const HermitianOperator& m);

struct PsdCheck {
    bool psd;
    double min_eigenvalue;
};

// lambda_min(M) >= -tol * max(1, ||M||_F)
PsdCheck is_psd(const HermitianOperator& m, double tol = 1e-9);

// a <= b in the Loewner order at the same relative tolerance convention.
bool loewner_leq(const HermitianOperator& a, const HermitianOperator& b, double tol = 1e-9);

// Tr(M N) for Hermitian M, N: real up to roundoff.  The imaginary part is
// checked against 1e-10 * max(1, ||M||_F * ||N||_F) and rejected above it.
double trace_product(const HermitianOperator& m, const HermitianOperator& n);

// Isometry between Hermitian matrices and R^{d^2}: diagonal entries first,
// then (sqrt(2)*Re, sqrt(2)*Im) for each i<j pair; Frobenius inner products
// map to Euclidean dot products.
std::vector<double> hermitian_to_rvec(const HermitianOperator& m);
HermitianOperator rvec_to_hermitian(int dim, const std::vector<double>& v);

} // namespace mgd
