#include "mgd/geo_uniform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mgd/errors.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/optim.hpp"
#include "mgd/parallel.hpp"
#include "mgd/rng.hpp"

namespace mgd {

namespace {

constexpr double kTau = 6.283185307179586;

double nearest_distance(const ComplexMatrix& m, const std::vector<ComplexMatrix>& pool) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : pool)
        best = std::min(best, frobenius_distance(m, u));
    return best;
}

std::vector<cplx> phase_fixed_unit(std::vector<cplx> v) {
    double mass = 0.0;
    for (const cplx& c : v)
        mass += std::norm(c);
    if (mass <= 0.0)
        return v;
    cplx phase = 1.0;
    for (const cplx& c : v)
        if (std::abs(c) > 1e-12) {
            phase = std::conj(c) / std::abs(c);
            break;
        }
    for (auto& c : v)
        c *= phase / std::sqrt(mass);
    return v;
}

} // namespace

UnitaryGroup UnitaryGroup::create(std::vector<ComplexMatrix> elements) {
    if (elements.empty())
        throw validation_error("group needs at least one element");
    const int d = elements[0].dim();
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].dim() != d)
            throw validation_error("group elements[" + std::to_string(i) +
                                   "] has mismatched dimension");
        if (elements[i].unitarity_defect() > 1e-10)
            throw validation_error("group elements[" + std::to_string(i) + "] is not unitary");
    }
    if (nearest_distance(ComplexMatrix::identity(d), elements) > 1e-8)
        throw validation_error("group does not contain the identity");
    for (size_t i = 0; i < elements.size(); ++i) {
        if (nearest_distance(elements[i].adjoint(), elements) > 1e-8)
            throw validation_error("group is missing the inverse of elements[" +
                                   std::to_string(i) + "]");
        for (size_t j = 0; j < elements.size(); ++j)
            if (nearest_distance(elements[i] * elements[j], elements) > 1e-8)
                throw validation_error("group is not closed: elements[" + std::to_string(i) +
                                       "] * elements[" + std::to_string(j) + "] has no match");
    }
    UnitaryGroup g;
    g.u_ = std::move(elements);
    return g;
}

Ensemble generate_ensemble(const GeoUniformSpec& spec) {
    const int n = spec.group.size();
    if (spec.rho0.dim() != spec.group.dim())
        throw validation_error("generator state dimension does not match the group");
    std::vector<double> probs(n, 1.0 / n);
    std::vector<HermitianOperator> states;
    states.reserve(n);
    for (int i = 0; i < n; ++i)
        states.push_back(conjugate(spec.group.element(i), spec.rho0));
    return Ensemble::create(std::move(probs), std::move(states));
}

Povm generate_povm(const HermitianOperator& pi0, const UnitaryGroup& group) {
    if (pi0.dim() != group.dim())
        throw validation_error("generator element dimension does not match the group");
    const int d = group.dim();
    std::vector<HermitianOperator> ops;
    ops.reserve(group.size());
    HermitianOperator total = HermitianOperator::zero(d);
    for (int i = 0; i < group.size(); ++i) {
        ops.push_back(conjugate(group.element(i), pi0));
        total += ops.back();
    }
    total.shift(-1.0);
    if (total.frobenius_norm() > 1e-8)
        throw validation_error("group orbit of the generator does not sum to the identity");
    return Povm::create(std::move(ops), 1e-8);
}

ComplexMatrix rotation_y(double theta) {
    ComplexMatrix r(2);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    r(0, 0) = c;
    r(0, 1) = -s;
    r(1, 0) = s;
    r(1, 1) = c;
    return r;
}

double rank_one_guesswork(const Ensemble& e, const std::vector<cplx>& ket) {
    return guesswork(posterior(e, dyad(ket)).dist);
}

namespace {

double guarded_value(const Ensemble& e, const std::vector<cplx>& ket) {
    try {
        return rank_one_guesswork(e, ket);
    } catch (const degenerate_outcome&) {
        return 1e9; // outcome never fires; not a candidate
    }
}

RankOneMin minimize_qubit(const Ensemble& e) {
    constexpr int kGrid = 720;
    auto ket_of = [](double alpha, double beta) {
        return std::vector<cplx>{std::cos(alpha),
                                 std::polar(std::sin(alpha), beta)};
    };

    std::vector<double> row_best(kGrid);
    std::vector<int> row_arg(kGrid);
    parallel_chunks(kGrid, [&](size_t i) {
        const double alpha = kTau * static_cast<double>(i) / kGrid;
        double best = 1e18;
        int arg = 0;
        for (int j = 0; j < kGrid; ++j) {
            const double beta = kTau * j / kGrid;
            const double v = guarded_value(e, ket_of(alpha, beta));
            if (v < best) {
                best = v;
                arg = j;
            }
        }
        row_best[i] = best;
        row_arg[i] = arg;
    });

    std::vector<int> order(kGrid);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return row_best[a] < row_best[b]; });

    RankOneMin out;
    out.value = 1e18;
    out.evaluations = static_cast<long>(kGrid) * kGrid;
    opt::NmOptions nmo;
    nmo.max_iter = 600;
    nmo.xtol = 1e-10;
    nmo.ftol = 1e-15;
    nmo.step = 0.5 * kTau / kGrid;
    for (int k = 0; k < 5 && k < kGrid; ++k) {
        const int i = order[k];
        const std::vector<double> x0 = {kTau * static_cast<double>(i) / kGrid,
                                        kTau * row_arg[i] / kGrid};
        const auto res = opt::nelder_mead(
            [&](const std::vector<double>& x) { return guarded_value(e, ket_of(x[0], x[1])); },
            x0, nmo);
        out.evaluations += res.evaluations;
        if (res.value < out.value) {
            out.value = res.value;
            out.alpha = res.x[0];
            out.beta = res.x[1];
        }
    }
    out.ket = phase_fixed_unit(ket_of(*out.alpha, *out.beta));
    return out;
}

RankOneMin minimize_sampled(const Ensemble& e) {
    const int d = e.dim();
    constexpr int kSamples = 65536;
    Rng rng(0x726f6du);

    std::vector<std::pair<double, std::vector<cplx>>> best;
    for (int s = 0; s < kSamples; ++s) {
        std::vector<cplx> ket(d);
        for (auto& c : ket)
            c = rng.complex_normal();
        const double v = guarded_value(e, ket);
        best.emplace_back(v, std::move(ket));
        std::sort(best.begin(), best.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (best.size() > 5)
            best.pop_back();
    }

    RankOneMin out;
    out.heuristic = true;
    out.value = best.front().first;
    out.ket = best.front().second;
    out.evaluations = kSamples;
    opt::NmOptions nmo;
    nmo.max_iter = 800;
    nmo.xtol = 1e-10;
    nmo.ftol = 1e-15;
    nmo.step = 0.05;
    for (const auto& [v0, ket0] : best) {
        std::vector<double> x0(2 * d);
        for (int i = 0; i < d; ++i) {
            x0[2 * i] = ket0[i].real();
            x0[2 * i + 1] = ket0[i].imag();
        }
        const auto res = opt::nelder_mead(
            [&](const std::vector<double>& x) {
                std::vector<cplx> v(d);
                for (int i = 0; i < d; ++i)
                    v[i] = cplx(x[2 * i], x[2 * i + 1]);
                return guarded_value(e, v);
            },
            x0, nmo);
        out.evaluations += res.evaluations;
        if (res.value < out.value) {
            out.value = res.value;
            out.ket.resize(d);
            for (int i = 0; i < d; ++i)
                out.ket[i] = cplx(res.x[2 * i], res.x[2 * i + 1]);
        }
    }
    out.ket = phase_fixed_unit(out.ket);
    return out;
}

} // namespace

RankOneMin minimize_rank_one(const Ensemble& e) {
    return e.dim() == 2 ? minimize_qubit(e) : minimize_sampled(e);
}

GeoOptimality check_geo_uniform_optimality(const Ensemble& e, const GeoUniformSpec& spec,
                                           const HermitianOperator& pi0,
                                           const ComplexMatrix& v) {
    const int d = e.dim();
    if (spec.group.dim() != d || pi0.dim() != d || v.dim() != d)
        throw validation_error("dimension mismatch between ensemble, group, and intertwiner");
    if (v.unitarity_defect() > 1e-10)
        throw validation_error("intertwiner is not unitary");
    const int n = spec.group.size();
    if (e.size() != n)
        throw validation_error("ensemble size does not match the group");
    for (int i = 0; i < n; ++i) {
        if (std::abs(e.prob(i) - 1.0 / n) > 1e-8)
            throw validation_error("ensemble prior is not uniform");
        const HermitianOperator expect = conjugate(spec.group.element(i), spec.rho0);
        if (frobenius_distance(e.state(i).matrix(), expect.matrix()) > 1e-8)
            throw validation_error("states[" + std::to_string(i) +
                                   "] is not the group orbit of the generator");
    }

    GeoOptimality out;
    out.commutes = true;
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix& u = spec.group.element(i);
        if (frobenius_distance(v * u, u * v) > 1e-10) {
            out.commutes = false;
            break;
        }
    }

    const RankOneMin ro = minimize_rank_one(e);
    out.rank_one_min = ro.value;
    out.heuristic = ro.heuristic;
    out.candidate_value = guesswork(posterior(e, conjugate(v, pi0)).dist);
    out.optimal = out.commutes && std::abs(out.candidate_value - ro.value) <= 1e-6;

    const Povm base = generate_povm(pi0, spec.group);
    std::vector<HermitianOperator> rotated;
    rotated.reserve(base.size());
    for (int j = 0; j < base.size(); ++j)
        rotated.push_back(conjugate(v, base.op(j)));
    out.povm_value = conditional_guesswork(e, Povm::create(std::move(rotated), 1e-8)).guesswork;
    return out;
}

} // namespace mgd
