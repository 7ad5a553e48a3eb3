#include "mgd/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgd/errors.hpp"
#include "mgd/kernels.hpp"

namespace mgd::opt {

namespace {

// Dense LU with partial pivoting for the tiny square systems below.
struct Lu {
    int n = 0;
    std::vector<double> a; // row-major, factors in place
    std::vector<int> piv;
    bool singular = false;

    explicit Lu(std::vector<double> m, int dim) : n(dim), a(std::move(m)), piv(dim) {
        std::iota(piv.begin(), piv.end(), 0);
        for (int k = 0; k < n; ++k) {
            int p = k;
            double best = std::abs(a[static_cast<size_t>(k) * n + k]);
            for (int i = k + 1; i < n; ++i) {
                const double v = std::abs(a[static_cast<size_t>(i) * n + k]);
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (best < 1e-13) {
                singular = true;
                return;
            }
            if (p != k) {
                for (int j = 0; j < n; ++j)
                    std::swap(a[static_cast<size_t>(k) * n + j], a[static_cast<size_t>(p) * n + j]);
                std::swap(piv[static_cast<size_t>(k)], piv[static_cast<size_t>(p)]);
            }
            const double d = a[static_cast<size_t>(k) * n + k];
            for (int i = k + 1; i < n; ++i) {
                const double f = a[static_cast<size_t>(i) * n + k] / d;
                a[static_cast<size_t>(i) * n + k] = f;
                for (int j = k + 1; j < n; ++j)
                    a[static_cast<size_t>(i) * n + j] -= f * a[static_cast<size_t>(k) * n + j];
            }
        }
    }

    std::vector<double> solve(const std::vector<double>& b) const {
        std::vector<double> x(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            x[static_cast<size_t>(i)] = b[static_cast<size_t>(piv[static_cast<size_t>(i)])];
        for (int i = 1; i < n; ++i) {
            double s = x[static_cast<size_t>(i)];
            for (int j = 0; j < i; ++j)
                s -= a[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
            x[static_cast<size_t>(i)] = s;
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = x[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                s -= a[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
            x[static_cast<size_t>(i)] = s / a[static_cast<size_t>(i) * n + i];
        }
        return x;
    }

    // solve A^T y = b
    std::vector<double> solve_transposed(const std::vector<double>& b) const {
        std::vector<double> y = b;
        // (PA)^T = A^T P^T = (LU)^T = U^T L^T; solve U^T z = b, L^T t = z, y = P^T t
        for (int i = 0; i < n; ++i) {
            double s = y[static_cast<size_t>(i)];
            for (int j = 0; j < i; ++j)
                s -= a[static_cast<size_t>(j) * n + i] * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s / a[static_cast<size_t>(i) * n + i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[static_cast<size_t>(i)];
            for (int j = i + 1; j < n; ++j)
                s -= a[static_cast<size_t>(j) * n + i] * y[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        std::vector<double> out(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            out[static_cast<size_t>(piv[static_cast<size_t>(i)])] = y[static_cast<size_t>(i)];
        return out;
    }
};

double norm2(const std::vector<double>& v) {
    return std::sqrt(kernels::active().ddot(v.size(), v.data(), v.data()));
}

} // namespace

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const NmOptions& opts) {
    const size_t n = x0.size();
    if (n == 0)
        throw validation_error("Nelder-Mead needs at least one coordinate");
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> val(n + 1);
    for (size_t i = 0; i < n; ++i)
        pts[i + 1][i] += opts.step;
    for (size_t i = 0; i <= n; ++i)
        val[i] = eval(pts[i]);

    std::vector<size_t> ord(n + 1);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        std::iota(ord.begin(), ord.end(), size_t{0});
        std::stable_sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return val[a] < val[b]; });
        const size_t best = ord[0], worst = ord[n], second = ord[n - 1];

        double diam = 0.0;
        for (size_t i = 0; i <= n; ++i)
            for (size_t j = 0; j < n; ++j)
                diam = std::max(diam, std::abs(pts[i][j] - pts[best][j]));
        if (diam <= opts.xtol && std::abs(val[worst] - val[best]) <= opts.ftol)
            break;

        std::vector<double> centroid(n, 0.0);
        for (size_t i = 0; i <= n; ++i) {
            if (i == worst)
                continue;
            for (size_t j = 0; j < n; ++j)
                centroid[j] += pts[i][j];
        }
        for (auto& c : centroid)
            c /= static_cast<double>(n);

        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (size_t j = 0; j < n; ++j)
                x[j] = centroid[j] + t * (centroid[j] - pts[worst][j]);
            return x;
        };

        const std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr < val[best]) {
            const std::vector<double> xe = blend(2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                val[worst] = fe;
            } else {
                pts[worst] = xr;
                val[worst] = fr;
            }
            continue;
        }
        if (fr < val[second]) {
            pts[worst] = xr;
            val[worst] = fr;
            continue;
        }
        const bool outside = fr < val[worst];
        const std::vector<double> xc = blend(outside ? 0.5 : -0.5);
        const double fc = eval(xc);
        if (fc < (outside ? fr : val[worst])) {
            pts[worst] = xc;
            val[worst] = fc;
            continue;
        }
        // shrink toward the best vertex
        for (size_t i = 0; i <= n; ++i) {
            if (i == best)
                continue;
            for (size_t j = 0; j < n; ++j)
                pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
            val[i] = eval(pts[i]);
        }
    }

    size_t best = 0;
    for (size_t i = 1; i <= n; ++i)
        if (val[i] < val[best])
            best = i;
    return {pts[best], val[best], evals};
}

NnlsResult nnls(const std::vector<std::vector<double>>& cols, const std::vector<double>& b) {
    const size_t ncol = cols.size();
    const size_t m = b.size();
    for (const auto& c : cols)
        if (c.size() != m)
            throw validation_error("NNLS column length mismatch");

    const auto& ops = kernels::active();
    std::vector<double> x(ncol, 0.0);
    std::vector<double> r = b; // residual b - A x
    std::vector<bool> passive(ncol, false);
    std::vector<size_t> pset;

    const double grad_tol = 1e-12 * std::max(1.0, norm2(b));
    const int max_outer = static_cast<int>(3 * ncol + 32);

    auto solve_passive = [&](std::vector<double>& z) -> bool {
        // normal equations on the passive set, escalating ridge on breakdown
        const size_t k = pset.size();
        std::vector<double> g(k * k), rhs(k);
        for (size_t a = 0; a < k; ++a) {
            rhs[a] = ops.ddot(m, cols[pset[a]].data(), b.data());
            for (size_t c = a; c < k; ++c) {
                const double v = ops.ddot(m, cols[pset[a]].data(), cols[pset[c]].data());
                g[a * k + c] = v;
                g[c * k + a] = v;
            }
        }
        for (double ridge : {0.0, 1e-13, 1e-11, 1e-9}) {
            std::vector<double> gr = g;
            for (size_t a = 0; a < k; ++a)
                gr[a * k + a] += ridge;
            // Cholesky
            bool ok = true;
            for (size_t i = 0; i < k && ok; ++i) {
                double d = gr[i * k + i];
                for (size_t j = 0; j < i; ++j)
                    d -= gr[i * k + j] * gr[i * k + j];
                if (d <= 0.0) {
                    ok = false;
                    break;
                }
                gr[i * k + i] = std::sqrt(d);
                for (size_t l = i + 1; l < k; ++l) {
                    double s = gr[l * k + i];
                    for (size_t j = 0; j < i; ++j)
                        s -= gr[l * k + j] * gr[i * k + j];
                    gr[l * k + i] = s / gr[i * k + i];
                }
            }
            if (!ok)
                continue;
            z.assign(k, 0.0);
            for (size_t i = 0; i < k; ++i) {
                double s = rhs[i];
                for (size_t j = 0; j < i; ++j)
                    s -= gr[i * k + j] * z[j];
                z[i] = s / gr[i * k + i];
            }
            for (size_t ii = k; ii-- > 0;) {
                double s = z[ii];
                for (size_t j = ii + 1; j < k; ++j)
                    s -= gr[j * k + ii] * z[j];
                z[ii] = s / gr[ii * k + ii];
            }
            return true;
        }
        return false;
    };

    for (int outer = 0; outer < max_outer; ++outer) {
        // gradient of 0.5||Ax-b||^2 is -A^T r; look for the steepest free coordinate
        double best = grad_tol;
        size_t enter = ncol;
        for (size_t j = 0; j < ncol; ++j) {
            if (passive[j])
                continue;
            const double w = ops.ddot(m, cols[j].data(), r.data());
            if (w > best) {
                best = w;
                enter = j;
            }
        }
        if (enter == ncol)
            return {std::move(x), norm2(r), true};

        passive[enter] = true;
        pset.push_back(enter);

        for (int inner = 0; inner < max_outer; ++inner) {
            std::vector<double> z;
            if (!solve_passive(z)) {
                // dependent column; back it out
                passive[pset.back()] = false;
                pset.pop_back();
                break;
            }
            bool all_pos = true;
            for (double v : z)
                if (v <= 0.0) {
                    all_pos = false;
                    break;
                }
            if (all_pos) {
                for (size_t a = 0; a < pset.size(); ++a)
                    x[pset[a]] = z[a];
                break;
            }
            double alpha = 1.0;
            for (size_t a = 0; a < pset.size(); ++a)
                if (z[a] <= 0.0) {
                    const double xa = x[pset[a]];
                    const double t = xa / (xa - z[a]);
                    alpha = std::min(alpha, t);
                }
            for (size_t a = 0; a < pset.size(); ++a)
                x[pset[a]] += alpha * (z[a] - x[pset[a]]);
            std::vector<size_t> kept;
            for (size_t a = 0; a < pset.size(); ++a) {
                if (x[pset[a]] <= 1e-14) {
                    x[pset[a]] = 0.0;
                    passive[pset[a]] = false;
                } else {
                    kept.push_back(pset[a]);
                }
            }
            pset = std::move(kept);
            if (pset.empty())
                break;
        }

        r = b;
        for (size_t a = 0; a < pset.size(); ++a)
            ops.daxpy(m, -x[pset[a]], cols[pset[a]].data(), r.data());
    }
    return {std::move(x), norm2(r), false};
}

SimplexResult simplex_min(const std::vector<std::vector<double>>& cols,
                          const std::vector<double>& cost, const std::vector<double>& b,
                          std::vector<int> basis, int max_iter) {
    const int m = static_cast<int>(b.size());
    const size_t ncol = cols.size();
    if (cost.size() != ncol)
        throw validation_error("simplex cost/column count mismatch");
    if (static_cast<int>(basis.size()) != m)
        throw validation_error("simplex basis must have one column per row");

    auto basis_matrix = [&](const std::vector<int>& bs) {
        std::vector<double> mb(static_cast<size_t>(m) * m);
        for (int j = 0; j < m; ++j) {
            const auto& col = cols[static_cast<size_t>(bs[static_cast<size_t>(j)])];
            for (int i = 0; i < m; ++i)
                mb[static_cast<size_t>(i) * m + j] = col[static_cast<size_t>(i)];
        }
        return mb;
    };

    int degenerate_streak = 0;
    int iters = 0;
    for (; iters < max_iter; ++iters) {
        Lu lu(basis_matrix(basis), m);
        if (lu.singular)
            throw solver_error("simplex basis became singular", 0.0);
        std::vector<double> xb = lu.solve(b);
        std::vector<double> cb(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            cb[static_cast<size_t>(j)] = cost[static_cast<size_t>(basis[static_cast<size_t>(j)])];
        std::vector<double> y = lu.solve_transposed(cb);

        const bool bland = degenerate_streak > 4 * m + 16;
        int enter = -1;
        double best_rc = -1e-10;
        for (size_t j = 0; j < ncol; ++j) {
            bool in_basis = false;
            for (int k = 0; k < m; ++k)
                if (basis[static_cast<size_t>(k)] == static_cast<int>(j)) {
                    in_basis = true;
                    break;
                }
            if (in_basis)
                continue;
            const double rc =
                cost[j] - kernels::active().ddot(static_cast<size_t>(m), y.data(), cols[j].data());
            if (bland) {
                if (rc < -1e-12) {
                    enter = static_cast<int>(j);
                    break;
                }
            } else if (rc < best_rc) {
                best_rc = rc;
                enter = static_cast<int>(j);
            }
        }
        if (enter < 0) {
            std::vector<double> w(ncol, 0.0);
            double value = 0.0;
            for (int j = 0; j < m; ++j) {
                const double v = std::max(0.0, xb[static_cast<size_t>(j)]);
                w[static_cast<size_t>(basis[static_cast<size_t>(j)])] = v;
                value += v * cost[static_cast<size_t>(basis[static_cast<size_t>(j)])];
            }
            return {std::move(w), value, std::move(basis), iters, true};
        }

        const std::vector<double> u = lu.solve(cols[static_cast<size_t>(enter)]);
        double theta = 0.0;
        int leave = -1;
        for (int k = 0; k < m; ++k) {
            if (u[static_cast<size_t>(k)] > 1e-11) {
                const double t = std::max(0.0, xb[static_cast<size_t>(k)]) / u[static_cast<size_t>(k)];
                if (leave < 0 || t < theta - 1e-15 ||
                    (t < theta + 1e-15 &&
                     basis[static_cast<size_t>(k)] < basis[static_cast<size_t>(leave)])) {
                    theta = t;
                    leave = k;
                }
            }
        }
        if (leave < 0)
            throw solver_error("simplex objective is unbounded", 0.0);
        degenerate_streak = theta < 1e-13 ? degenerate_streak + 1 : 0;
        basis[static_cast<size_t>(leave)] = enter;
    }

    // Iteration cap: return the current basic solution, flagged non-optimal.
    Lu lu(basis_matrix(basis), m);
    std::vector<double> xb = lu.solve(b);
    std::vector<double> w(ncol, 0.0);
    double value = 0.0;
    for (int j = 0; j < m; ++j) {
        const double v = std::max(0.0, xb[static_cast<size_t>(j)]);
        w[static_cast<size_t>(basis[static_cast<size_t>(j)])] = v;
        value += v * cost[static_cast<size_t>(basis[static_cast<size_t>(j)])];
    }
    return {std::move(w), value, std::move(basis), iters, false};
}

} // namespace mgd::opt
