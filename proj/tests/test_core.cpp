#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "mgd/errors.hpp"
#include "mgd/hermitian.hpp"
#include "mgd/kernels.hpp"
#include "mgd/matrix.hpp"
#include "mgd/optim.hpp"
#include "mgd/rng.hpp"

using namespace mgd;

// ---- oracles ---------------------------------------------------------------

// Closed-form eigenvalues of a 2x2 hermitian [[a, b], [conj(b), c]].
static std::pair<double, double> eig2_oracle(const HermitianOperator& m) {
    const double a = m(0, 0).real(), c = m(1, 1).real();
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + std::norm(m(0, 1)));
    return {mean + disc, mean - disc}; // descending
}

// ---- kernels ---------------------------------------------------------------

TEST_CASE("scalar and avx2 kernels agree on awkward lengths") {
    const auto& scalar = kernels::scalar_ops();
    const auto* avx2 = kernels::avx2_ops();
    if (!avx2) {
        WARN_MESSAGE(true, "avx2 backend unavailable; equivalence not exercised");
        return;
    }
    Rng r(12345);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 100u}) {
        std::vector<double> x(n), y1(n), y2(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = r.normal();
            y1[i] = r.normal();
            y2[i] = y1[i];
        }
        scalar.daxpy(n, 1.7, x.data(), y1.data());
        avx2->daxpy(n, 1.7, x.data(), y2.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
        CHECK(scalar.ddot(n, x.data(), y1.data()) ==
              doctest::Approx(avx2->ddot(n, x.data(), y1.data())).epsilon(1e-12));

        std::vector<kernels::cplx> zx(n), zy1(n), zy2(n);
        for (std::size_t i = 0; i < n; ++i) {
            zx[i] = {r.normal(), r.normal()};
            zy1[i] = {r.normal(), r.normal()};
            zy2[i] = zy1[i];
        }
        const kernels::cplx a{0.3, -1.1};
        scalar.zaxpy(n, a, zx.data(), zy1.data());
        avx2->zaxpy(n, a, zx.data(), zy2.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(zy1[i].real() == doctest::Approx(zy2[i].real()).epsilon(1e-14));
            CHECK(zy1[i].imag() == doctest::Approx(zy2[i].imag()).epsilon(1e-14));
        }
        const auto d1 = scalar.zdotc(n, zx.data(), zy1.data());
        const auto d2 = avx2->zdotc(n, zx.data(), zy1.data());
        CHECK(d1.real() == doctest::Approx(d2.real()).epsilon(1e-12));
        CHECK(d1.imag() == doctest::Approx(d2.imag()).epsilon(1e-12));
    }
}

TEST_CASE("backend switch is honored and reported") {
    REQUIRE(kernels::set_backend(kernels::Backend::scalar));
    CHECK(kernels::current_backend() == kernels::Backend::scalar);
    CHECK(std::string(kernels::active().name) == "scalar");
    if (kernels::avx2_available()) {
        REQUIRE(kernels::set_backend(kernels::Backend::avx2));
        CHECK(kernels::current_backend() == kernels::Backend::avx2);
    }
}

// ---- matrices --------------------------------------------------------------

TEST_CASE("matrix product matches a hand example and adjoint reverses it") {
    ComplexMatrix a(2, {cplx(1, 1), cplx(0, 2), cplx(3, 0), cplx(-1, 0)});
    ComplexMatrix b(2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, -1)});
    const ComplexMatrix ab = a * b;
    CHECK(ab(0, 0) == cplx(0, 2));
    CHECK(ab(0, 1) == cplx(3, 1)); // (1+i)*1 + 2i*(-i) = 1+i+2 = 3+i
    CHECK(ab(1, 0) == cplx(-1, 0));
    CHECK(ab(1, 1) == cplx(3, 1));
    const ComplexMatrix lhs = (a * b).adjoint();
    const ComplexMatrix rhs = b.adjoint() * a.adjoint();
    CHECK(frobenius_distance(lhs, rhs) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("unitarity defect flags non-unitaries") {
    ComplexMatrix u(2, {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(0, 1)});
    CHECK(u.unitarity_defect() < 1e-15);
    ComplexMatrix v(2, {cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(2, 0)});
    CHECK(v.unitarity_defect() > 1.0);
}

// ---- hermitian -------------------------------------------------------------

TEST_CASE("construction symmetrizes and rejects non-finite input") {
    ComplexMatrix m(2, {cplx(1, 5), cplx(2, 3), cplx(0, 0), cplx(4, 0)});
    HermitianOperator h(m);
    CHECK(h(0, 0) == cplx(1, 0)); // imaginary diagonal part discarded
    CHECK(h(0, 1) == cplx(1, 1.5));
    CHECK(h(1, 0) == cplx(1, -1.5));
    ComplexMatrix bad(1, {cplx(std::nan(""), 0)});
    CHECK_THROWS_AS(HermitianOperator{bad}, validation_error);
}

TEST_CASE("eigendecomposition matches the closed 2x2 form") {
    Rng rng(777);
    for (int trial = 0; trial < 200; ++trial) {
        ComplexMatrix m(2);
        m(0, 0) = rng.normal();
        m(1, 1) = rng.normal();
        m(0, 1) = {rng.normal(), rng.normal()};
        m(1, 0) = std::conj(m(0, 1));
        HermitianOperator h(m);
        const auto sp = eig(h);
        const auto [hi, lo] = eig2_oracle(h);
        CHECK(sp.eigenvalues[0] == doctest::Approx(hi).epsilon(1e-12));
        CHECK(sp.eigenvalues[1] == doctest::Approx(lo).epsilon(1e-12));
    }
}

TEST_CASE("eigendecomposition reconstructs the operator up to dimension 6") {
    Rng rng(4242);
    for (int d = 1; d <= 6; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
            ComplexMatrix m(d);
            for (int i = 0; i < d; ++i) {
                m(i, i) = rng.normal();
                for (int j = i + 1; j < d; ++j) {
                    m(i, j) = {rng.normal(), rng.normal()};
                    m(j, i) = std::conj(m(i, j));
                }
            }
            HermitianOperator h(m);
            const auto sp = eig(h);
            // eigenvalues descending
            for (int k = 0; k + 1 < d; ++k) CHECK(sp.eigenvalues[k] >= sp.eigenvalues[k + 1]);
            // sum of eigen-dyads reproduces the operator
            HermitianOperator rebuilt = HermitianOperator::zero(d);
            for (int k = 0; k < d; ++k) rebuilt.axpy(sp.eigenvalues[k], dyad(sp.vector(k)));
            CHECK(frobenius_distance(rebuilt.matrix(), h.matrix()) <
                  1e-11 * std::max(1.0, h.frobenius_norm()));
            // columns orthonormal
            for (int k = 0; k < d; ++k) {
                const auto vk = sp.vector(k);
                for (int l = k; l < d; ++l) {
                    const auto vl = sp.vector(l);
                    cplx ip = 0;
                    for (int t = 0; t < d; ++t) ip += std::conj(vk[t]) * vl[t];
                    CHECK(std::abs(ip - (k == l ? 1.0 : 0.0)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("eig is deterministic") {
    Rng rng(5);
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i) {
        m(i, i) = rng.normal();
        for (int j = i + 1; j < 3; ++j) {
            m(i, j) = {rng.normal(), rng.normal()};
            m(j, i) = std::conj(m(i, j));
        }
    }
    HermitianOperator h(m);
    const auto s1 = eig(h), s2 = eig(h);
    for (int k = 0; k < 3; ++k) CHECK(s1.eigenvalues[k] == s2.eigenvalues[k]);
    CHECK(frobenius_distance(s1.vectors, s2.vectors) == 0.0);
}

TEST_CASE("loewner order and psd checks") {
    HermitianOperator id = HermitianOperator::identity(2);
    HermitianOperator half = HermitianOperator::scaled_identity(2, 0.5);
    CHECK(loewner_leq(half, id));
    CHECK_FALSE(loewner_leq(id, half));
    CHECK(is_psd(half).psd);
    HermitianOperator neg = HermitianOperator::scaled_identity(2, -0.1);
    CHECK_FALSE(is_psd(neg).psd);
    CHECK(is_psd(neg).min_eigenvalue == doctest::Approx(-0.1));
}

TEST_CASE("rvec embedding is an inner-product isometry and round-trips") {
    Rng rng(99);
    for (int d : {1, 2, 3, 5}) {
        ComplexMatrix m1(d), m2(d);
        for (int i = 0; i < d; ++i) {
            m1(i, i) = rng.normal();
            m2(i, i) = rng.normal();
            for (int j = i + 1; j < d; ++j) {
                m1(i, j) = {rng.normal(), rng.normal()};
                m1(j, i) = std::conj(m1(i, j));
                m2(i, j) = {rng.normal(), rng.normal()};
                m2(j, i) = std::conj(m2(i, j));
            }
        }
        HermitianOperator h1(m1), h2(m2);
        const auto v1 = hermitian_to_rvec(h1), v2 = hermitian_to_rvec(h2);
        REQUIRE(static_cast<int>(v1.size()) == d * d);
        const double dot = std::inner_product(v1.begin(), v1.end(), v2.begin(), 0.0);
        CHECK(dot == doctest::Approx(trace_product(h1, h2)).epsilon(1e-12));
        const HermitianOperator back = rvec_to_hermitian(d, v1);
        CHECK(frobenius_distance(back.matrix(), h1.matrix()) < 1e-13);
    }
}

TEST_CASE("trace_product rejects wildly inconsistent dimensions") {
    CHECK_THROWS_AS(trace_product(HermitianOperator::identity(2), HermitianOperator::identity(3)),
                    validation_error);
}

// ---- optimization ----------------------------------------------------------

TEST_CASE("nelder-mead finds the minimum of a shifted quadratic") {
    auto f = [](const std::vector<double>& x) {
        double v = 0;
        for (size_t i = 0; i < x.size(); ++i) v += (x[i] - double(i + 1)) * (x[i] - double(i + 1));
        return v;
    };
    const auto r = opt::nelder_mead(f, {0.0, 0.0, 0.0});
    CHECK(r.value < 1e-12);
    for (size_t i = 0; i < 3; ++i) CHECK(r.x[i] == doctest::Approx(double(i + 1)).epsilon(1e-5));
}

TEST_CASE("nelder-mead handles the banana valley") {
    auto rosen = [](const std::vector<double>& x) {
        return 100.0 * (x[1] - x[0] * x[0]) * (x[1] - x[0] * x[0]) + (1 - x[0]) * (1 - x[0]);
    };
    opt::NmOptions o;
    o.max_iter = 4000;
    const auto r = opt::nelder_mead(rosen, {-1.2, 1.0}, o);
    CHECK(r.value < 1e-10);
}

TEST_CASE("nnls solves hand cases and satisfies the KKT conditions") {
    // unconstrained optimum is feasible
    {
        const auto r = opt::nnls({{1, 0}, {0, 1}}, {2.0, 3.0});
        REQUIRE(r.converged);
        CHECK(r.x[0] == doctest::Approx(2.0));
        CHECK(r.x[1] == doctest::Approx(3.0));
        CHECK(r.residual < 1e-12);
    }
    // activity at the boundary: b = (1, -1) against identity columns
    {
        const auto r = opt::nnls({{1, 0}, {0, 1}}, {1.0, -1.0});
        REQUIRE(r.converged);
        CHECK(r.x[0] == doctest::Approx(1.0));
        CHECK(r.x[1] == doctest::Approx(0.0));
        CHECK(r.residual == doctest::Approx(1.0));
    }
    // random KKT: x >= 0, grad = A^T(Ax - b), grad_j >= 0 where x_j = 0,
    // |grad_j| small where x_j > 0
    Rng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 6, n = 9;
        std::vector<std::vector<double>> cols(n, std::vector<double>(m));
        std::vector<double> b(m);
        for (auto& c : cols)
            for (auto& v : c) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        const auto r = opt::nnls(cols, b);
        REQUIRE(r.converged);
        std::vector<double> resid(m);
        for (int i = 0; i < m; ++i) {
            resid[i] = -b[i];
            for (int j = 0; j < n; ++j) resid[i] += cols[j][i] * r.x[j];
        }
        for (int j = 0; j < n; ++j) {
            REQUIRE(r.x[j] >= 0.0);
            double g = 0;
            for (int i = 0; i < m; ++i) g += cols[j][i] * resid[i];
            if (r.x[j] > 1e-10)
                CHECK(std::abs(g) < 1e-8);
            else
                CHECK(g > -1e-8);
        }
    }
}

TEST_CASE("simplex matches brute-force vertex enumeration") {
    // min c.w st M w = b, w >= 0 with m=2 rows: enumerate all column pairs
    Rng rng(60601);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2, n = 6;
        std::vector<std::vector<double>> cols(n, std::vector<double>(m));
        std::vector<double> cost(n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < m; ++i) cols[j][i] = rng.normal();
            // positive costs keep the program bounded below on the w >= 0 cone
            cost[j] = 0.1 + std::abs(rng.normal());
        }
        // random nonnegative combination of the first columns, then enough of
        // the two unit columns that b > 0 and the starting basis is feasible
        cols[n - 2] = {1.0, 0.0};
        cols[n - 1] = {0.0, 1.0};
        std::vector<double> b(m, 0.0);
        for (int j = 0; j < n - 2; ++j) {
            const double w = rng.uniform();
            for (int i = 0; i < m; ++i) b[i] += w * cols[j][i];
        }
        for (int i = 0; i < m; ++i) b[i] += std::max(0.0, -b[i]) + rng.uniform();

        double best = 1e300;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double det = cols[p][0] * cols[q][1] - cols[p][1] * cols[q][0];
                if (std::abs(det) < 1e-9) continue;
                const double wp = (b[0] * cols[q][1] - b[1] * cols[q][0]) / det;
                const double wq = (cols[p][0] * b[1] - cols[p][1] * b[0]) / det;
                if (wp < -1e-10 || wq < -1e-10) continue;
                best = std::min(best, cost[p] * wp + cost[q] * wq);
            }
        // the unit-column pair is always a feasible vertex, so both sides exist
        const auto lp = opt::simplex_min(cols, cost, b, {n - 2, n - 1});
        REQUIRE(lp.optimal);
        CHECK(lp.value == doctest::Approx(best).epsilon(1e-8));
    }
}

TEST_CASE("simplex reports unbounded programs") {
    // min -w0 st w0 - w1 = 0: push both to infinity
    CHECK_THROWS_AS(
        opt::simplex_min({{1.0}, {-1.0}, {1.0}}, {-1.0, 0.0, 0.0}, {1.0}, {2}),
        solver_error);
}
