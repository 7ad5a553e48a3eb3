#include "mgd/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "mgd/errors.hpp"
#include "mgd/kernels.hpp"
#include "mgd/optim.hpp"
#include "mgd/rng.hpp"

namespace mgd {

namespace {

constexpr double kEpsActive = 1e-6;
constexpr double kKernelThreshold = 1e-5;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Complex Cholesky of a Hermitian positive definite matrix.  Failure (a
// nonpositive pivot) doubles as the feasibility test A < T in the barrier.

struct CholFac {
    int d = 0;
    double logdet = 0.0;
    std::vector<cplx> l; // row-major, lower triangle

    bool factor(const HermitianOperator& s) {
        d = s.dim();
        logdet = 0.0;
        l.assign(s.size(), cplx{});
        const cplx* a = s.data();
        for (int j = 0; j < d; ++j) {
            double diag = a[j * d + j].real();
            for (int k = 0; k < j; ++k)
                diag -= std::norm(l[j * d + k]);
            if (!(diag > 0.0) || !std::isfinite(diag))
                return false;
            const double root = std::sqrt(diag);
            l[j * d + j] = root;
            logdet += std::log(diag);
            for (int i = j + 1; i < d; ++i) {
                cplx v = a[i * d + j];
                for (int k = 0; k < j; ++k)
                    v -= l[i * d + k] * std::conj(l[j * d + k]);
                l[i * d + j] = v / root;
            }
        }
        return true;
    }

    // S^{-1}, row-major dense
    std::vector<cplx> inverse() const {
        std::vector<cplx> w(static_cast<size_t>(d) * d);
        std::vector<cplx> y(d), x(d);
        for (int c = 0; c < d; ++c) {
            for (int i = 0; i < d; ++i) {
                cplx s = i == c ? cplx{1.0} : cplx{};
                for (int k = 0; k < i; ++k)
                    s -= l[i * d + k] * y[k];
                y[i] = s / l[i * d + i].real();
            }
            for (int i = d - 1; i >= 0; --i) {
                cplx s = y[i];
                for (int k = i + 1; k < d; ++k)
                    s -= std::conj(l[k * d + i]) * x[k];
                x[i] = s / l[i * d + i].real();
            }
            for (int i = 0; i < d; ++i)
                w[i * d + c] = x[i];
        }
        return w;
    }
};

// ---------------------------------------------------------------------------
// Coordinate basis for Hermitian matrices: d diagonal units E_aa, then for
// each i<j the pair E_ij + E_ji and i(E_ij - E_ji); d^2 elements.  With
// W = S^{-1} the barrier calculus reduces to entry lookups via
//   Tr(W E_ab) = W_ba,   Tr(W E_ab W E_cd) = W_bc W_da.

struct BasisElem {
    int count = 0;
    int r[2] = {0, 0};
    int c[2] = {0, 0};
    cplx w[2];
    double tr = 0.0;
};

std::vector<BasisElem> make_basis(int d) {
    std::vector<BasisElem> b;
    b.reserve(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a) {
        BasisElem e;
        e.count = 1;
        e.r[0] = a;
        e.c[0] = a;
        e.w[0] = 1.0;
        e.tr = 1.0;
        b.push_back(e);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            BasisElem re;
            re.count = 2;
            re.r[0] = i;
            re.c[0] = j;
            re.w[0] = 1.0;
            re.r[1] = j;
            re.c[1] = i;
            re.w[1] = 1.0;
            b.push_back(re);
            BasisElem im;
            im.count = 2;
            im.r[0] = i;
            im.c[0] = j;
            im.w[0] = cplx(0.0, 1.0);
            im.r[1] = j;
            im.c[1] = i;
            im.w[1] = cplx(0.0, -1.0);
            b.push_back(im);
        }
    return b;
}

HermitianOperator from_coords(int d, const std::vector<BasisElem>& basis,
                              const std::vector<double>& x) {
    ComplexMatrix m(d);
    for (size_t c = 0; c < basis.size(); ++c) {
        const auto& e = basis[c];
        for (int k = 0; k < e.count; ++k)
            m(e.r[k], e.c[k]) += e.w[k] * x[c];
    }
    return HermitianOperator(m);
}

// Solve the (symmetric positive definite) Newton system, adding a relative
// ridge if the factorization breaks down.
std::optional<std::vector<double>> solve_spd(const std::vector<double>& h,
                                             const std::vector<double>& g, int k) {
    double maxdiag = 1.0;
    for (int i = 0; i < k; ++i)
        maxdiag = std::max(maxdiag, h[i * k + i]);
    for (double ridge : {0.0, 1e-14, 1e-11, 1e-8}) {
        std::vector<double> a = h;
        for (int i = 0; i < k; ++i)
            a[i * k + i] += ridge * maxdiag;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i) {
            double diag = a[i * k + i];
            for (int j = 0; j < i; ++j)
                diag -= a[i * k + j] * a[i * k + j];
            if (!(diag > 0.0) || !std::isfinite(diag)) {
                ok = false;
                break;
            }
            a[i * k + i] = std::sqrt(diag);
            for (int l = i + 1; l < k; ++l) {
                double s = a[l * k + i];
                for (int j = 0; j < i; ++j)
                    s -= a[l * k + j] * a[i * k + j];
                a[l * k + i] = s / a[i * k + i];
            }
        }
        if (!ok)
            continue;
        std::vector<double> x(g);
        for (int i = 0; i < k; ++i) {
            double s = x[i];
            for (int j = 0; j < i; ++j)
                s -= a[i * k + j] * x[j];
            x[i] = s / a[i * k + i];
        }
        for (int i = k - 1; i >= 0; --i) {
            double s = x[i];
            for (int j = i + 1; j < k; ++j)
                s -= a[j * k + i] * x[j];
            x[i] = s / a[i * k + i];
        }
        return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Barrier core: maximize Tr(A) subject to A <= T_k for every target, via
// damped Newton on Tr(A) + mu * sum_k log det(T_k - A) along the mu schedule.

struct BarrierOut {
    HermitianOperator a;
    double objective = 0.0;
    int newton_total = 0;
    bool converged = true;
    double mu_final = 0.0;
    std::vector<IterationRecord> path;
};

double min_slack_of(const std::vector<HermitianOperator>& targets, const HermitianOperator& a) {
    double worst = kInf;
    for (const auto& t : targets)
        worst = std::min(worst, eig(t - a).min_eigenvalue());
    return worst;
}

BarrierOut run_barrier(const std::vector<HermitianOperator>& targets, const SolverOptions& opts,
                       int outer_base) {
    const int d = targets.front().dim();
    const auto basis = make_basis(d);
    const int nk = static_cast<int>(basis.size());
    const auto& ops = kernels::active();

    double lo = kInf;
    for (const auto& t : targets)
        lo = std::min(lo, eig(t).min_eigenvalue());
    BarrierOut out;
    out.a = HermitianOperator::scaled_identity(d, lo - 1.0);

    // Tr(A) + mu * sum log det(T - A); -inf when outside the cone
    auto barrier_value = [&](const HermitianOperator& a, double mu) {
        double val = a.trace();
        CholFac f;
        for (const auto& t : targets) {
            if (!f.factor(t - a))
                return -kInf;
            val += mu * f.logdet;
        }
        return val;
    };

    double mu = opts.mu_init;
    int outer = outer_base;
    while (true) {
        int steps = 0;
        for (; steps < opts.max_newton_steps; ++steps) {
            double fcur = out.a.trace();
            std::vector<std::vector<cplx>> ws(targets.size());
            {
                CholFac f;
                for (size_t k = 0; k < targets.size(); ++k) {
                    if (!f.factor(targets[k] - out.a))
                        throw solver_error("barrier iterate left the feasible cone", 0.0);
                    fcur += mu * f.logdet;
                    ws[k] = f.inverse();
                }
            }

            std::vector<double> g(nk);
            for (int c = 0; c < nk; ++c) {
                const auto& e = basis[c];
                cplx acc{};
                for (const auto& w : ws)
                    for (int t = 0; t < e.count; ++t)
                        acc += e.w[t] * w[e.c[t] * d + e.r[t]];
                g[c] = e.tr - mu * acc.real();
            }
            const double gnorm = std::sqrt(ops.ddot(g.size(), g.data(), g.data()));
            if (gnorm <= opts.newton_grad_tol)
                break;

            std::vector<double> h(static_cast<size_t>(nk) * nk, 0.0);
            for (int c1 = 0; c1 < nk; ++c1) {
                const auto& e1 = basis[c1];
                for (int c2 = c1; c2 < nk; ++c2) {
                    const auto& e2 = basis[c2];
                    double sum = 0.0;
                    for (const auto& w : ws) {
                        cplx acc{};
                        for (int t1 = 0; t1 < e1.count; ++t1)
                            for (int t2 = 0; t2 < e2.count; ++t2)
                                acc += e1.w[t1] * e2.w[t2] * w[e1.c[t1] * d + e2.r[t2]] *
                                       w[e2.c[t2] * d + e1.r[t1]];
                        sum += acc.real();
                    }
                    h[c1 * nk + c2] = mu * sum;
                    h[c2 * nk + c1] = mu * sum;
                }
            }

            const auto delta = solve_spd(h, g, nk);
            if (!delta)
                break; // Hessian breakdown: accept the current center
            const double dec = ops.ddot(g.size(), g.data(), delta->data());
            if (dec <= 1e-20)
                break;
            const HermitianOperator step = from_coords(d, basis, *delta);

            double t = 1.0;
            bool accepted = false;
            double ftrial = 0.0;
            HermitianOperator trial;
            for (int half = 0; half < 60; ++half) {
                trial = out.a;
                trial.axpy(t, step);
                ftrial = barrier_value(trial, mu);
                if (ftrial > -kInf && ftrial >= fcur + 1e-4 * t * dec) {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if (!accepted)
                break; // no admissible step: the center is as good as we get
            out.a = trial;
            if (ftrial - fcur <= 1e-15 * (1.0 + std::abs(fcur))) {
                ++steps;
                break; // progress below measurement noise
            }
        }
        if (steps >= opts.max_newton_steps)
            out.converged = false;
        out.newton_total += steps;

        IterationRecord rec;
        rec.outer = outer++;
        rec.mu = mu;
        rec.objective = out.a.trace();
        rec.min_slack = min_slack_of(targets, out.a);
        rec.newton_steps = steps;
        out.path.push_back(rec);

        if (mu < opts.mu_min)
            break;
        mu *= opts.mu_factor;
    }
    out.mu_final = mu;
    out.objective = out.a.trace();
    return out;
}

// ---------------------------------------------------------------------------
// Rank-one probes.  For a direction v the order minimizing v^dag R_sigma v
// gives query position 1 to the largest p_i <v|rho_i|v>; iterating through
// the smallest-eigenvalue direction of the resulting slack hunts for binding
// (or violated) constraints without enumerating all n!.

double quad_form(const HermitianOperator& m, const std::vector<cplx>& v) {
    const int d = m.dim();
    cplx acc{};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            acc += std::conj(v[i]) * m(i, j) * v[j];
    return acc.real();
}

std::vector<int> rank_for_direction(const Ensemble& e, const std::vector<cplx>& v) {
    const int n = e.size();
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i)
        s[i] = e.prob(i) * quad_form(e.state(i), v);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return s[a] > s[b]; });
    std::vector<int> rank(n);
    for (int k = 0; k < n; ++k)
        rank[idx[k]] = k + 1;
    return rank;
}

std::vector<std::vector<cplx>> random_directions(int d, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<cplx>> out(count);
    for (auto& v : out) {
        v.resize(d);
        for (auto& x : v)
            x = rng.complex_normal();
    }
    return out;
}

// Distinct orders reached from the seed directions, with their slack minima
// relative to `center`.
std::map<std::vector<int>, double> probe_orders(const Ensemble& e, const HermitianOperator& center,
                                                const std::vector<std::vector<cplx>>& seeds) {
    std::map<std::vector<int>, double> seen;
    for (const auto& seed : seeds) {
        std::vector<int> sigma = rank_for_direction(e, seed);
        for (int iter = 0; iter < 8; ++iter) {
            if (seen.count(sigma))
                break;
            const HermitianOperator s = strategy_operator(e, sigma) - center;
            const Spectrum sp = eig(s);
            seen.emplace(sigma, sp.min_eigenvalue());
            std::vector<int> next = rank_for_direction(e, sp.vector(s.dim() - 1));
            if (next == sigma)
                break;
            sigma = std::move(next);
        }
    }
    return seen;
}

double worst_slack_full(const Ensemble& e, const HermitianOperator& center) {
    double worst = kInf;
    for (const auto& sigma : all_rank_vectors(e.size()))
        worst = std::min(worst, eig(strategy_operator(e, sigma) - center).min_eigenvalue());
    return worst;
}

std::vector<std::vector<cplx>> slack_floor_directions(const std::vector<HermitianOperator>& targets,
                                                      const HermitianOperator& a) {
    std::vector<std::vector<cplx>> dirs;
    dirs.reserve(targets.size());
    for (const auto& t : targets) {
        const HermitianOperator s = t - a;
        dirs.push_back(eig(s).vector(s.dim() - 1));
    }
    return dirs;
}

std::vector<std::vector<cplx>> eigvec_directions(const HermitianOperator& m) {
    const Spectrum sp = eig(m);
    std::vector<std::vector<cplx>> dirs;
    dirs.reserve(m.dim());
    for (int k = 0; k < m.dim(); ++k)
        dirs.push_back(sp.vector(k));
    return dirs;
}

} // namespace

HermitianOperator strategy_operator(const Ensemble& e, const std::vector<int>& rank) {
    const int n = e.size();
    if (static_cast<int>(rank.size()) != n)
        throw validation_error("query order length does not match the ensemble");
    std::vector<int> sorted = rank;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k)
        if (sorted[k] != k + 1)
            throw validation_error("query order must be a permutation of 1..n");
    HermitianOperator r = HermitianOperator::zero(e.dim());
    for (int i = 0; i < n; ++i)
        r.axpy(rank[i] * e.prob(i), e.state(i));
    return r;
}

namespace {

void validate_options(const SolverOptions& o) {
    if (!(o.tol > 0.0)) throw validation_error("tol must be positive");
    if (o.max_newton_steps < 1) throw validation_error("max_newton_steps must be at least 1");
    if (!(o.mu_factor > 0.0 && o.mu_factor < 1.0))
        throw validation_error("mu_factor must lie strictly between 0 and 1");
    if (o.enumeration_cap < 1 || o.enumeration_cap > 8)
        throw validation_error("enumeration_cap must lie in 1..8");
    if (!(o.mu_init > 0.0) || !(o.mu_min > 0.0) || o.mu_min > o.mu_init)
        throw validation_error("mu_init and mu_min must be positive with mu_min <= mu_init");
    if (!(o.newton_grad_tol > 0.0)) throw validation_error("newton_grad_tol must be positive");
}

} // namespace

MgdSolution solve_mgd(const Ensemble& e, const SolverOptions& opts) {
    validate_options(opts);
    const int n = e.size();
    const int d = e.dim();
    if (n > 8)
        throw validation_error("the guesswork program is capped at 8 states");

    std::vector<std::vector<int>> sigmas;
    std::vector<HermitianOperator> targets;
    std::set<std::vector<int>> have;
    auto add_sigma = [&](const std::vector<int>& sigma) {
        if (have.insert(sigma).second) {
            sigmas.push_back(sigma);
            targets.push_back(strategy_operator(e, sigma));
        }
    };

    MgdSolution sol;
    sol.exhaustive = n <= opts.enumeration_cap;
    BarrierOut out;
    if (sol.exhaustive) {
        for (const auto& sigma : all_rank_vectors(n))
            add_sigma(sigma);
        out = run_barrier(targets, opts, 0);
        sol.converged = out.converged;
    } else {
        // Working-set loop: seed with the prior's order and the average
        // state's eigendirections, then alternate solve / separate.
        add_sigma(optimal_strategy(e.prior()).rank);
        for (const auto& v : eigvec_directions(e.average_state()))
            add_sigma(rank_for_direction(e, v));
        for (const auto& v : random_directions(d, 32, 0x6d676453u))
            add_sigma(rank_for_direction(e, v));

        sol.converged = false;
        int outer_base = 0;
        for (int round = 0; round < 64; ++round) {
            out = run_barrier(targets, opts, outer_base);
            outer_base = out.path.back().outer + 1;
            sol.iterations += out.newton_total;
            sol.path.insert(sol.path.end(), out.path.begin(), out.path.end());

            auto seeds = slack_floor_directions(targets, out.a);
            auto extra = random_directions(d, 64, 0xa5eedu + static_cast<std::uint64_t>(round));
            seeds.insert(seeds.end(), extra.begin(), extra.end());
            std::vector<std::vector<int>> violated;
            for (const auto& [sigma, slack] : probe_orders(e, out.a, seeds))
                if (slack < -1e-9 && !have.count(sigma))
                    violated.push_back(sigma);
            if (violated.empty()) {
                sol.converged = out.converged;
                break;
            }
            for (const auto& sigma : violated)
                add_sigma(sigma);
        }
    }

    sol.a = out.a;
    sol.objective = out.objective;
    if (sol.exhaustive) {
        sol.iterations = out.newton_total;
        sol.path = out.path;
    }
    sol.duality_gap_estimate = out.mu_final * static_cast<double>(targets.size()) * d;

    for (size_t k = 0; k < targets.size(); ++k)
        if (eig(targets[k] - sol.a).min_eigenvalue() <= kEpsActive)
            sol.active_set.push_back(sigmas[k]);

    if (n <= 6) {
        sol.audited = true;
        sol.audit_min_slack = worst_slack_full(e, sol.a);
    } else {
        sol.audited = false;
        auto seeds = eigvec_directions(sol.a);
        auto floors = slack_floor_directions(targets, sol.a);
        seeds.insert(seeds.end(), floors.begin(), floors.end());
        auto extra = random_directions(d, 256, 0xad17u);
        seeds.insert(seeds.end(), extra.begin(), extra.end());
        double worst = kInf;
        for (const auto& [sigma, slack] : probe_orders(e, sol.a, seeds))
            worst = std::min(worst, slack);
        sol.audit_min_slack = worst;
    }
    return sol;
}

MedSolution solve_med(const Ensemble& e, const SolverOptions& opts) {
    validate_options(opts);
    const int n = e.size();
    const int d = e.dim();
    std::vector<HermitianOperator> targets;
    targets.reserve(n);
    for (int i = 0; i < n; ++i)
        targets.push_back(scaled(e.state(i), -e.prob(i)));

    const BarrierOut out = run_barrier(targets, opts, 0);
    MedSolution sol;
    sol.y = scaled(out.a, -1.0);
    sol.success_prob = sol.y.trace();
    sol.p_err = 1.0 - sol.success_prob;
    sol.iterations = out.newton_total;
    sol.duality_gap_estimate = out.mu_final * static_cast<double>(n) * d;
    sol.converged = out.converged;
    sol.path = out.path;
    for (int i = 0; i < n; ++i)
        if (eig(targets[i] - out.a).min_eigenvalue() <= kEpsActive)
            sol.active_states.push_back(i);
    return sol;
}

double helstrom_error(const Ensemble& e) {
    if (e.size() != 2)
        throw validation_error("the closed-form error needs exactly two states");
    HermitianOperator diff = scaled(e.state(0), e.prob(0));
    diff.axpy(-e.prob(1), e.state(1));
    double trace_norm = 0.0;
    for (double lam : eig(diff).eigenvalues)
        trace_norm += std::abs(lam);
    return 0.5 * (1.0 - trace_norm);
}

Certificate certify(const Ensemble& e, const Povm& m) {
    if (m.dim() != e.dim())
        throw validation_error("measurement dimension does not match the ensemble");
    const int d = e.dim();
    const int n = e.size();

    std::vector<HermitianOperator> used;
    ComplexMatrix gamma(d);
    for (int j = 0; j < m.size(); ++j) {
        GuessStrategy st;
        try {
            st = optimal_strategy(posterior(e, m.op(j)).dist);
        } catch (const degenerate_outcome&) {
            st = optimal_strategy(e.prior()); // weightless outcome: any order works
        }
        const HermitianOperator r = strategy_operator(e, st.rank);
        gamma += r.matrix() * m.op(j).matrix();
        used.push_back(r);
    }

    Certificate cert;
    cert.gamma = HermitianOperator(gamma);
    cert.hermiticity_residual = frobenius_distance(gamma, cert.gamma.matrix());

    if (n <= 6) {
        cert.exhaustive = true;
        cert.worst_violation = worst_slack_full(e, cert.gamma);
    } else {
        cert.exhaustive = false;
        auto seeds = eigvec_directions(cert.gamma);
        for (const auto& r : used) {
            const HermitianOperator s = r - cert.gamma;
            seeds.push_back(eig(s).vector(d - 1));
        }
        auto extra = random_directions(d, 256, 0xce47u);
        seeds.insert(seeds.end(), extra.begin(), extra.end());
        double worst = kInf;
        for (const auto& [sigma, slack] : probe_orders(e, cert.gamma, seeds))
            worst = std::min(worst, slack);
        cert.worst_violation = worst;
    }
    return cert;
}

PovmRecovery recover_povm(const Ensemble& e, const MgdSolution& sol) {
    if (sol.duality_gap_estimate > 1e-6)
        throw validation_error("recovery needs a solution with duality gap <= 1e-6");
    PovmRecovery rec;
    if (sol.active_set.empty()) {
        rec.failure_reason = "no active constraints at the solution";
        return rec;
    }
    const int d = e.dim();

    // One cone generator per near-kernel direction of each active slack.
    std::vector<std::vector<double>> cols;
    std::vector<std::pair<size_t, std::vector<cplx>>> owner;
    for (size_t j = 0; j < sol.active_set.size(); ++j) {
        const HermitianOperator s = strategy_operator(e, sol.active_set[j]) - sol.a;
        const Spectrum sp = eig(s);
        for (int k = 0; k < d; ++k) {
            if (sp.eigenvalues[k] > kKernelThreshold)
                continue;
            std::vector<cplx> v = sp.vector(k);
            cols.push_back(hermitian_to_rvec(dyad(v)));
            owner.emplace_back(j, std::move(v));
        }
    }
    if (cols.empty()) {
        rec.failure_reason = "active slacks have no near-kernel directions";
        return rec;
    }

    const auto nn = opt::nnls(cols, hermitian_to_rvec(HermitianOperator::identity(d)));
    if (!nn.converged) {
        rec.failure_reason = "identity completion did not converge";
        return rec;
    }
    if (nn.residual > 1e-6 * std::sqrt(static_cast<double>(d))) {
        rec.failure_reason = "kernel cone cannot complete the identity";
        return rec;
    }

    std::map<size_t, HermitianOperator> parts;
    for (size_t c = 0; c < cols.size(); ++c) {
        if (nn.x[c] <= 0.0)
            continue;
        auto [it, fresh] = parts.try_emplace(owner[c].first, HermitianOperator::zero(d));
        it->second.axpy(nn.x[c], dyad(owner[c].second));
        (void)fresh;
    }
    std::vector<HermitianOperator> pis;
    for (auto& [j, pi] : parts)
        if (pi.trace() > 1e-12)
            pis.push_back(std::move(pi));
    if (pis.empty()) {
        rec.failure_reason = "identity completion is identically zero";
        return rec;
    }

    // Whiten the tiny completeness defect: pi_j <- T pi_j T with T = Sum^-1/2.
    HermitianOperator total = HermitianOperator::zero(d);
    for (const auto& pi : pis)
        total += pi;
    const Spectrum tsp = eig(total);
    if (tsp.min_eigenvalue() <= 1e-12) {
        rec.failure_reason = "identity completion is singular";
        return rec;
    }
    HermitianOperator t = HermitianOperator::zero(d);
    for (int k = 0; k < d; ++k)
        t.axpy(1.0 / std::sqrt(tsp.eigenvalues[k]), dyad(tsp.vector(k)));
    for (auto& pi : pis)
        pi = conjugate(t.matrix(), pi);

    try {
        rec.povm = Povm::create(std::move(pis));
    } catch (const validation_error& err) {
        rec.failure_reason = err.what();
        return rec;
    }
    rec.value = conditional_guesswork(e, *rec.povm).guesswork;

    const Certificate cert = certify(e, *rec.povm);
    if (!cert.passed()) {
        rec.failure_reason = "recovered measurement fails the optimality certificate";
        return rec;
    }
    if (std::abs(rec.value - sol.objective) > 1e-5) {
        rec.failure_reason = "recovered measurement misses the optimal value";
        return rec;
    }
    rec.ok = true;
    return rec;
}

} // namespace mgd
