#include "mgd/ensemble.hpp"

#include <cmath>
#include <string>

#include "mgd/errors.hpp"

namespace mgd {

Distribution Distribution::create(std::vector<double> p) {
    if (p.empty())
        throw validation_error("distribution must have at least one entry");
    double sum = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        if (!std::isfinite(p[i]))
            throw validation_error("probabilities[" + std::to_string(i) + "] is not finite");
        if (p[i] < -1e-10)
            throw validation_error("probabilities[" + std::to_string(i) + "] = " +
                                   std::to_string(p[i]) + " is negative");
        if (p[i] < 0.0)
            p[i] = 0.0;
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw validation_error("probabilities sum to " + std::to_string(sum) +
                               " (expected 1 within 1e-9)");
    Distribution d;
    d.p_ = std::move(p);
    return d;
}

Ensemble Ensemble::create(std::vector<double> probs, std::vector<HermitianOperator> states) {
    if (states.empty())
        throw validation_error("ensemble must contain at least one state");
    if (probs.size() != states.size())
        throw validation_error("ensemble has " + std::to_string(probs.size()) +
                               " probabilities but " + std::to_string(states.size()) + " states");
    const int d = states[0].dim();
    for (size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != d)
            throw validation_error("states[" + std::to_string(i) + "] has dimension " +
                                   std::to_string(states[i].dim()) + ", expected " +
                                   std::to_string(d));
        const PsdCheck chk = is_psd(states[i], 1e-9);
        if (!chk.psd)
            throw validation_error("states[" + std::to_string(i) +
                                   "] is not positive semidefinite (min eigenvalue " +
                                   std::to_string(chk.min_eigenvalue) + ")");
        const double tr = states[i].trace();
        if (std::abs(tr - 1.0) > 1e-9)
            throw validation_error("states[" + std::to_string(i) + "] has trace " +
                                   std::to_string(tr) + " (expected 1 within 1e-9)");
    }
    Ensemble e;
    e.prior_ = Distribution::create(std::move(probs));
    e.states_ = std::move(states);
    return e;
}

HermitianOperator Ensemble::average_state() const {
    HermitianOperator avg = HermitianOperator::zero(dim());
    for (int i = 0; i < size(); ++i)
        avg.axpy(prob(i), state(i));
    return avg;
}

Povm Povm::create(std::vector<HermitianOperator> ops, double completeness_tol) {
    if (ops.empty())
        throw validation_error("POVM must contain at least one element");
    const int d = ops[0].dim();
    HermitianOperator sum = HermitianOperator::zero(d);
    for (size_t j = 0; j < ops.size(); ++j) {
        if (ops[j].dim() != d)
            throw validation_error("povm[" + std::to_string(j) + "] has dimension " +
                                   std::to_string(ops[j].dim()) + ", expected " +
                                   std::to_string(d));
        const PsdCheck chk = is_psd(ops[j], 1e-9);
        if (!chk.psd)
            throw validation_error("povm[" + std::to_string(j) +
                                   "] is not positive semidefinite (min eigenvalue " +
                                   std::to_string(chk.min_eigenvalue) + ")");
        sum += ops[j];
    }
    sum -= HermitianOperator::identity(d);
    const double defect = sum.frobenius_norm();
    if (defect > completeness_tol)
        throw validation_error("POVM elements sum to identity with defect " +
                               std::to_string(defect) + " (tolerance " +
                               std::to_string(completeness_tol) + ")");
    Povm m;
    m.ops_ = std::move(ops);
    return m;
}

std::vector<std::vector<double>> channel(const Ensemble& e, const Povm& m) {
    if (e.dim() != m.dim())
        throw validation_error("ensemble and POVM dimensions differ");
    std::vector<std::vector<double>> rows(static_cast<size_t>(e.size()));
    for (int i = 0; i < e.size(); ++i) {
        auto& row = rows[static_cast<size_t>(i)];
        row.resize(static_cast<size_t>(m.size()));
        double sum = 0.0;
        for (int j = 0; j < m.size(); ++j) {
            double v = trace_product(e.state(i), m.op(j));
            if (v < 0.0) {
                if (v < -1e-10)
                    throw validation_error("channel entry (" + std::to_string(i) + "," +
                                           std::to_string(j) + ") = " + std::to_string(v) +
                                           " is negative");
                v = 0.0;
            }
            if (v > 1.0)
                v = 1.0;
            row[static_cast<size_t>(j)] = v;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-8)
            throw validation_error("channel row " + std::to_string(i) + " sums to " +
                                   std::to_string(sum) + " (expected 1 within 1e-8)");
    }
    return rows;
}

PosteriorResult posterior(const Ensemble& e, const HermitianOperator& pi) {
    if (e.dim() != pi.dim())
        throw validation_error("ensemble and outcome dimensions differ");
    std::vector<double> q(static_cast<size_t>(e.size()));
    double weight = 0.0;
    for (int i = 0; i < e.size(); ++i) {
        double v = e.prob(i) * trace_product(e.state(i), pi);
        if (v < 0.0)
            v = 0.0;
        q[static_cast<size_t>(i)] = v;
        weight += v;
    }
    const double scale = std::max(1.0, pi.trace());
    if (weight <= 1e-14 * scale)
        throw degenerate_outcome("outcome has zero weight; posterior undefined");
    for (auto& v : q)
        v /= weight;
    return {Distribution::create(std::move(q)), weight};
}

HermitianOperator random_density(int dim, Rng& rng) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            g(i, j) = rng.complex_normal();
    HermitianOperator rho(g * g.adjoint());
    rho.scale(1.0 / rho.trace());
    return rho;
}

Ensemble random_ensemble(int dim, int n, std::uint64_t seed) {
    if (dim < 1 || n < 1)
        throw validation_error("random ensemble needs dim >= 1 and n >= 1");
    Rng rng(seed);
    std::vector<double> p(static_cast<size_t>(n));
    double sum = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform()); // Exp(1); normalized -> Dirichlet(1)
        sum += v;
    }
    for (auto& v : p)
        v /= sum;
    std::vector<HermitianOperator> states;
    states.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        states.push_back(random_density(dim, rng));
    return Ensemble::create(std::move(p), std::move(states));
}

Povm random_povm(int dim, int m, std::uint64_t seed) {
    if (dim < 1 || m < 1)
        throw validation_error("random POVM needs dim >= 1 and m >= 1");
    Rng rng(seed);
    std::vector<HermitianOperator> raw;
    raw.reserve(static_cast<size_t>(m));
    HermitianOperator total = HermitianOperator::zero(dim);
    for (int k = 0; k < m; ++k) {
        ComplexMatrix g(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                g(i, j) = rng.complex_normal();
        raw.emplace_back(g * g.adjoint());
        total += raw.back();
    }
    // Whiten: pi_k = T A_k T with T = (sum A)^{-1/2}, so completeness is exact
    // up to the eigensolver's accuracy.
    const Spectrum sp = eig(total);
    if (sp.min_eigenvalue() <= 1e-12)
        throw solver_error("random POVM normalizer is numerically singular",
                           sp.min_eigenvalue());
    ComplexMatrix t(dim);
    for (int k = 0; k < dim; ++k) {
        const double w = 1.0 / std::sqrt(sp.eigenvalues[static_cast<size_t>(k)]);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                t(i, j) += w * sp.vectors(i, k) * std::conj(sp.vectors(j, k));
    }
    std::vector<HermitianOperator> ops;
    ops.reserve(raw.size());
    for (const auto& a : raw)
        ops.emplace_back(t * a.matrix() * t);
    return Povm::create(std::move(ops), 1e-9);
}

} // namespace mgd
