#include "mgd/povm_search.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "mgd/errors.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/optim.hpp"
#include "mgd/rng.hpp"

namespace mgd {
namespace {

constexpr double kTau = 6.283185307179586476925286766559;
constexpr double kHalfPi = 1.5707963267948966192313216916398;

// Mass-weighted posterior guesswork of a rank-one outcome.  An outcome that
// never fires costs nothing.
double outcome_cost(const Ensemble& e, const HermitianOperator& dy, long& evals) {
    ++evals;
    try {
        const PosteriorResult post = posterior(e, dy);
        return post.weight * guesswork(post.dist);
    } catch (const degenerate_outcome&) {
        return 0.0;
    }
}

// e_a; (e_i + e_j)/sqrt2; (e_i + i e_j)/sqrt2.  The d^2 dyads span the
// Hermitian space and the diagonal block alone sums to the identity, so the
// linear programs below always start from a feasible basis.
std::vector<std::vector<cplx>> canonical_kets(int d) {
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<cplx>> kets;
    kets.reserve(static_cast<size_t>(d) * static_cast<size_t>(d));
    for (int a = 0; a < d; ++a) {
        std::vector<cplx> k(static_cast<size_t>(d));
        k[static_cast<size_t>(a)] = 1.0;
        kets.push_back(std::move(k));
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::vector<cplx> kre(static_cast<size_t>(d)), kim(static_cast<size_t>(d));
            kre[static_cast<size_t>(i)] = r;
            kre[static_cast<size_t>(j)] = r;
            kim[static_cast<size_t>(i)] = r;
            kim[static_cast<size_t>(j)] = cplx(0.0, r);
            kets.push_back(std::move(kre));
            kets.push_back(std::move(kim));
        }
    return kets;
}

struct WeightedKet {
    double w;
    std::vector<cplx> ket;
};

// Assemble sum_k w_k |v_k><v_k| into a POVM, whitening the tiny completeness
// defect left by the weight solve: with S the raw sum, conjugating every
// element by S^{-1/2} restores sum = I exactly.  Returns nothing when the
// parts are degenerate (rank-deficient sum).
std::optional<Povm> assemble_povm(int d, const std::vector<WeightedKet>& parts) {
    std::vector<HermitianOperator> ops;
    HermitianOperator total = HermitianOperator::zero(d);
    for (const auto& p : parts) {
        if (p.w <= 1e-12) continue;
        HermitianOperator op = HermitianOperator::zero(d);
        op.axpy(p.w, dyad(p.ket));
        total += op;
        ops.push_back(std::move(op));
    }
    if (ops.empty()) return std::nullopt;
    const Spectrum sp = eig(total);
    if (sp.min_eigenvalue() <= 1e-6) return std::nullopt;
    HermitianOperator whiten = HermitianOperator::zero(d);
    for (int k = 0; k < d; ++k)
        whiten.axpy(1.0 / std::sqrt(sp.eigenvalues[static_cast<size_t>(k)]), dyad(sp.vector(k)));
    for (auto& op : ops) op = conjugate(whiten.matrix(), op);
    try {
        return Povm::create(std::move(ops), 1e-9);
    } catch (const validation_error&) {
        return std::nullopt;
    }
}

std::vector<cplx> qubit_ket(double alpha, double beta) {
    return {cplx(std::cos(alpha), 0.0), std::polar(std::sin(alpha), beta)};
}

std::vector<cplx> ket_from_coords(int d, const double* x) {
    std::vector<cplx> v(static_cast<size_t>(d));
    double mass = 0.0;
    for (int a = 0; a < d; ++a) {
        v[static_cast<size_t>(a)] = cplx(x[2 * a], x[2 * a + 1]);
        mass += std::norm(v[static_cast<size_t>(a)]);
    }
    if (mass < 1e-18) {
        v.assign(static_cast<size_t>(d), 0.0);
        v[0] = 1.0;
        return v;
    }
    const double inv = 1.0 / std::sqrt(mass);
    for (auto& c : v) c *= inv;
    return v;
}

} // namespace

SearchResult search_qubit(const Ensemble& e, int resolution, std::uint64_t /*seed*/) {
    if (e.dim() != 2) throw validation_error("search_qubit needs a two-dimensional ensemble");
    if (resolution < 8) throw validation_error("search_qubit resolution must be at least 8");

    long evals = 0;
    const std::vector<double> b = hermitian_to_rvec(HermitianOperator::identity(2));

    // Candidate directions (cos a, e^{i b} sin a): a sweeps a quarter turn so
    // every ray appears once, b sweeps the full phase circle.  Four canonical
    // directions close the list; their dyads are linearly independent and the
    // first two alone resolve the identity, giving the simplex solver its
    // feasible starting basis.
    std::vector<std::pair<double, double>> angles;
    const int na = resolution / 4 + 1;
    for (int a = 0; a < na; ++a) {
        const double alpha = kHalfPi * static_cast<double>(a) / static_cast<double>(na - 1);
        for (int bq = 0; bq < resolution; ++bq)
            angles.emplace_back(alpha, kTau * static_cast<double>(bq) / static_cast<double>(resolution));
    }
    angles.emplace_back(0.0, 0.0);               // e_0
    angles.emplace_back(kHalfPi, 0.0);           // e_1
    angles.emplace_back(0.5 * kHalfPi, 0.0);     // (e_0 + e_1)/sqrt2
    angles.emplace_back(0.5 * kHalfPi, kHalfPi); // (e_0 + i e_1)/sqrt2

    std::vector<std::vector<double>> cols;
    std::vector<double> cost;
    cols.reserve(angles.size());
    cost.reserve(angles.size());
    for (const auto& [alpha, beta] : angles) {
        const HermitianOperator dy = dyad(qubit_ket(alpha, beta));
        cols.push_back(hermitian_to_rvec(dy));
        cost.push_back(outcome_cost(e, dy, evals));
    }

    const int total = static_cast<int>(cols.size());
    const auto lp = opt::simplex_min(cols, cost, b, {total - 4, total - 3, total - 2, total - 1});

    std::vector<std::pair<double, double>> support;
    std::vector<double> support_w;
    for (int k = 0; k < total; ++k)
        if (lp.w[static_cast<size_t>(k)] > 1e-10) {
            support.push_back(angles[static_cast<size_t>(k)]);
            support_w.push_back(lp.w[static_cast<size_t>(k)]);
        }

    // Exact value of a weighted angle set, POVM included.
    auto finish = [&](const std::vector<std::pair<double, double>>& ang,
                      const std::vector<double>& w) -> std::optional<std::pair<Povm, double>> {
        std::vector<WeightedKet> parts;
        for (size_t k = 0; k < ang.size(); ++k)
            parts.push_back({w[k], qubit_ket(ang[k].first, ang[k].second)});
        auto povm = assemble_povm(2, parts);
        if (!povm) return std::nullopt;
        Povm merged = merge_equivalent_outcomes(e, *povm);
        const double value = conditional_guesswork(e, merged).guesswork;
        return std::make_pair(std::move(merged), value);
    };

    auto grid_candidate = finish(support, support_w);

    // Local refinement: move the support directions, re-solving the weights
    // at every step so completeness is kept; infeasible completions score
    // prohibitively.
    const size_t s = support.size();
    std::optional<std::pair<Povm, double>> refined_candidate;
    if (s > 0) {
        auto set_value = [&](const std::vector<double>& x, std::vector<double>* wout) {
            std::vector<std::vector<double>> dcols(s);
            std::vector<HermitianOperator> dys;
            dys.reserve(s);
            for (size_t k = 0; k < s; ++k) {
                dys.push_back(dyad(qubit_ket(x[2 * k], x[2 * k + 1])));
                dcols[k] = hermitian_to_rvec(dys[k]);
            }
            const auto nn = opt::nnls(dcols, b);
            if (!nn.converged || nn.residual > 1e-8) return 1e9;
            double value = 0.0;
            for (size_t k = 0; k < s; ++k)
                if (nn.x[k] > 1e-14) value += nn.x[k] * outcome_cost(e, dys[k], evals);
            if (wout) *wout = nn.x;
            return value;
        };
        std::vector<double> x0(2 * s);
        for (size_t k = 0; k < s; ++k) {
            x0[2 * k] = support[k].first;
            x0[2 * k + 1] = support[k].second;
        }
        opt::NmOptions nmo;
        nmo.max_iter = 600;
        nmo.xtol = 1e-10;
        nmo.ftol = 1e-15;
        nmo.step = 0.5 * kTau / static_cast<double>(resolution);
        const auto nm = opt::nelder_mead([&](const std::vector<double>& x) { return set_value(x, nullptr); },
                                         x0, nmo);
        std::vector<double> wref;
        if (set_value(nm.x, &wref) < 1e8) {
            std::vector<std::pair<double, double>> ang(s);
            for (size_t k = 0; k < s; ++k) ang[k] = {nm.x[2 * k], nm.x[2 * k + 1]};
            refined_candidate = finish(ang, wref);
        }
    }

    SearchResult out;
    out.evaluations = evals;
    if (grid_candidate && (!refined_candidate || grid_candidate->second <= refined_candidate->second)) {
        out.best_povm = grid_candidate->first;
        out.best_value = grid_candidate->second;
        out.method = SearchMethod::grid;
    } else if (refined_candidate) {
        out.best_povm = refined_candidate->first;
        out.best_value = refined_candidate->second;
        out.method = SearchMethod::refined;
    } else {
        // Degenerate fall-back: the basis measurement always assembles.
        auto basis = finish({{0.0, 0.0}, {kHalfPi, 0.0}}, {1.0, 1.0});
        if (!basis) throw solver_error("search_qubit could not assemble any measurement", 0.0);
        out.best_povm = basis->first;
        out.best_value = basis->second;
        out.method = SearchMethod::grid;
    }
    out.evaluations = evals;
    return out;
}

SearchResult search_general(const Ensemble& e, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw validation_error("search_general needs at least one restart");
    const int d = e.dim();
    const std::vector<double> b = hermitian_to_rvec(HermitianOperator::identity(d));
    const auto canon = canonical_kets(d);
    const int ncanon = static_cast<int>(canon.size());
    long evals = 0;

    std::optional<Povm> best_povm;
    double best_value = 0.0;
    bool refined_won = false;

    // Weighted-direction objective shared by the per-restart refinements.
    auto set_value = [&](const std::vector<std::vector<cplx>>& dirs, std::vector<double>* wout) {
        std::vector<std::vector<double>> dcols;
        std::vector<HermitianOperator> dys;
        dcols.reserve(dirs.size());
        dys.reserve(dirs.size());
        for (const auto& v : dirs) {
            dys.push_back(dyad(v));
            dcols.push_back(hermitian_to_rvec(dys.back()));
        }
        const auto nn = opt::nnls(dcols, b);
        if (!nn.converged || nn.residual > 1e-8) return 1e9;
        double value = 0.0;
        for (size_t k = 0; k < dirs.size(); ++k)
            if (nn.x[k] > 1e-14) value += nn.x[k] * outcome_cost(e, dys[k], evals);
        if (wout) *wout = nn.x;
        return value;
    };

    auto finish = [&](const std::vector<std::vector<cplx>>& dirs,
                      const std::vector<double>& w) -> std::optional<std::pair<Povm, double>> {
        std::vector<WeightedKet> parts;
        for (size_t k = 0; k < dirs.size(); ++k)
            if (w[k] > 1e-10) parts.push_back({w[k], dirs[k]});
        auto povm = assemble_povm(d, parts);
        if (!povm) return std::nullopt;
        Povm merged = merge_equivalent_outcomes(e, *povm);
        const double value = conditional_guesswork(e, merged).guesswork;
        return std::make_pair(std::move(merged), value);
    };

    auto offer = [&](std::optional<std::pair<Povm, double>> cand, bool from_refine) {
        if (!cand) return;
        if (!best_povm || cand->second < best_value) {
            best_povm = std::move(cand->first);
            best_value = cand->second;
            refined_won = from_refine;
        }
    };

    for (int r = 0; r < restarts; ++r) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(r + 1)));

        std::vector<std::vector<cplx>> kets;
        const int pool = 24 * d * d;
        kets.reserve(static_cast<size_t>(pool + ncanon));
        for (int k = 0; k < pool; ++k) {
            std::vector<cplx> v(static_cast<size_t>(d));
            double mass = 0.0;
            for (auto& c : v) {
                c = rng.complex_normal();
                mass += std::norm(c);
            }
            const double inv = 1.0 / std::sqrt(mass);
            for (auto& c : v) c *= inv;
            kets.push_back(std::move(v));
        }
        for (const auto& k : canon) kets.push_back(k);

        std::vector<std::vector<double>> cols;
        std::vector<double> cost;
        cols.reserve(kets.size());
        cost.reserve(kets.size());
        for (const auto& v : kets) {
            const HermitianOperator dy = dyad(v);
            cols.push_back(hermitian_to_rvec(dy));
            cost.push_back(outcome_cost(e, dy, evals));
        }
        std::vector<int> basis(static_cast<size_t>(ncanon));
        for (int k = 0; k < ncanon; ++k) basis[static_cast<size_t>(k)] = pool + k;
        const auto lp = opt::simplex_min(cols, cost, b, std::move(basis));

        std::vector<std::vector<cplx>> dirs;
        std::vector<double> w;
        for (size_t k = 0; k < kets.size(); ++k)
            if (lp.w[k] > 1e-10) {
                dirs.push_back(kets[k]);
                w.push_back(lp.w[k]);
            }
        if (dirs.empty()) continue;
        offer(finish(dirs, w), false);

        // Blockwise polish: one direction at a time, weights re-solved inside
        // the objective.
        opt::NmOptions nmo;
        nmo.max_iter = 240;
        nmo.xtol = 1e-9;
        nmo.ftol = 1e-13;
        nmo.step = 0.06;
        double cur = set_value(dirs, nullptr);
        if (cur < 1e8) {
            for (int pass = 0; pass < 3; ++pass) {
                bool moved = false;
                for (size_t blk = 0; blk < dirs.size(); ++blk) {
                    std::vector<double> x0(2 * static_cast<size_t>(d));
                    for (int a = 0; a < d; ++a) {
                        x0[2 * static_cast<size_t>(a)] = dirs[blk][static_cast<size_t>(a)].real();
                        x0[2 * static_cast<size_t>(a) + 1] = dirs[blk][static_cast<size_t>(a)].imag();
                    }
                    const auto nm = opt::nelder_mead(
                        [&](const std::vector<double>& x) {
                            std::vector<std::vector<cplx>> trial = dirs;
                            trial[blk] = ket_from_coords(d, x.data());
                            return set_value(trial, nullptr);
                        },
                        x0, nmo);
                    if (nm.value < cur - 1e-13) {
                        cur = nm.value;
                        dirs[blk] = ket_from_coords(d, nm.x.data());
                        moved = true;
                    }
                }
                if (!moved) break;
            }
            std::vector<double> wref;
            if (set_value(dirs, &wref) < 1e8) offer(finish(dirs, wref), true);
        }
    }

    if (!best_povm) {
        std::vector<std::vector<cplx>> basis_dirs(canon.begin(), canon.begin() + d);
        offer(finish(basis_dirs, std::vector<double>(static_cast<size_t>(d), 1.0)), false);
    }
    if (!best_povm) throw solver_error("search_general could not assemble any measurement", 0.0);

    SearchResult out;
    out.best_povm = *best_povm;
    out.best_value = conditional_guesswork(e, *best_povm).guesswork;
    out.evaluations = evals;
    out.method = refined_won ? SearchMethod::refined : SearchMethod::random_restart;
    return out;
}

} // namespace mgd
