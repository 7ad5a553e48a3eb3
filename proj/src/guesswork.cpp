#include "mgd/guesswork.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "mgd/errors.hpp"

namespace mgd {

namespace {
constexpr double kWeightFloor = 1e-12;
}

std::vector<int> GuessStrategy::order() const {
    std::vector<int> ord(rank.size());
    for (size_t i = 0; i < rank.size(); ++i)
        ord[static_cast<size_t>(rank[i] - 1)] = static_cast<int>(i);
    return ord;
}

GuessStrategy optimal_strategy(const Distribution& d) {
    const int n = d.size();
    std::vector<int> idx(static_cast<size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] > d[b]; });
    GuessStrategy s;
    s.rank.resize(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r)
        s.rank[static_cast<size_t>(idx[static_cast<size_t>(r)])] = r + 1;
    return s;
}

double strategy_value(const Distribution& d, const GuessStrategy& s) {
    if (static_cast<int>(s.rank.size()) != d.size())
        throw validation_error("strategy and distribution sizes differ");
    std::vector<bool> seen(s.rank.size(), false);
    for (int r : s.rank) {
        if (r < 1 || r > static_cast<int>(s.rank.size()) || seen[static_cast<size_t>(r - 1)])
            throw validation_error("strategy ranks must be a permutation of 1..n");
        seen[static_cast<size_t>(r - 1)] = true;
    }
    double g = 0.0;
    for (int i = 0; i < d.size(); ++i)
        g += s.rank[static_cast<size_t>(i)] * d[i];
    return g;
}

double guesswork(const Distribution& d) {
    std::vector<double> p = d.values();
    std::sort(p.begin(), p.end(), std::greater<>());
    double g = 0.0;
    for (size_t r = 0; r < p.size(); ++r)
        g += static_cast<double>(r + 1) * p[r];
    return g;
}

double error_probability(const Distribution& d) {
    return 1.0 - *std::max_element(d.values().begin(), d.values().end());
}

namespace {

// joint[i][j] = p_i * Tr(rho_i pi_j), clamped to be nonnegative
std::vector<std::vector<double>> joint_weights(const Ensemble& e, const Povm& m) {
    if (e.dim() != m.dim())
        throw validation_error("ensemble and POVM dimensions differ");
    std::vector<std::vector<double>> q(static_cast<size_t>(e.size()),
                                       std::vector<double>(static_cast<size_t>(m.size())));
    for (int i = 0; i < e.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
            double v = e.prob(i) * trace_product(e.state(i), m.op(j));
            q[static_cast<size_t>(i)][static_cast<size_t>(j)] = v < 0.0 ? 0.0 : v;
        }
    return q;
}

} // namespace

EvalReport conditional_guesswork(const Ensemble& e, const Povm& m) {
    const auto q = joint_weights(e, m);
    EvalReport rep;
    rep.guesswork = 0.0;
    rep.error_prob = 1.0;
    rep.per_outcome.reserve(static_cast<size_t>(m.size()));
    for (int j = 0; j < m.size(); ++j) {
        double w = 0.0, peak = 0.0;
        for (int i = 0; i < e.size(); ++i) {
            const double v = q[static_cast<size_t>(i)][static_cast<size_t>(j)];
            w += v;
            peak = std::max(peak, v);
        }
        rep.error_prob -= peak;
        if (w < kWeightFloor) {
            rep.per_outcome.push_back({w, 0.0, 0.0, true});
            continue;
        }
        std::vector<double> post(static_cast<size_t>(e.size()));
        for (int i = 0; i < e.size(); ++i)
            post[static_cast<size_t>(i)] = q[static_cast<size_t>(i)][static_cast<size_t>(j)] / w;
        const Distribution pd = Distribution::create(std::move(post));
        const double g = guesswork(pd);
        rep.guesswork += w * g;
        rep.per_outcome.push_back({w, g, error_probability(pd), false});
    }
    return rep;
}

double conditional_error(const Ensemble& e, const Povm& m) {
    const auto q = joint_weights(e, m);
    double success = 0.0;
    for (int j = 0; j < m.size(); ++j) {
        double peak = 0.0;
        for (int i = 0; i < e.size(); ++i)
            peak = std::max(peak, q[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        success += peak;
    }
    return 1.0 - success;
}

Povm merge_equivalent_outcomes(const Ensemble& e, const Povm& m, double completeness_tol) {
    const auto q = joint_weights(e, m);
    const GuessStrategy prior_order = optimal_strategy(e.prior());

    // the bucket key sorts a coarsened posterior: outcomes whose posteriors
    // differ only by rounding noise (proportional operators, exact ties)
    // must land in the same bucket, and an exact sort would split them
    const auto rank_key = [](std::vector<double> v) {
        for (double& x : v)
            x = std::round(x * 1e9);
        std::vector<int> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return v[static_cast<size_t>(a)] > v[static_cast<size_t>(b)];
        });
        std::vector<int> rank(v.size());
        for (size_t r = 0; r < idx.size(); ++r)
            rank[static_cast<size_t>(idx[r])] = static_cast<int>(r) + 1;
        return rank;
    };

    std::map<std::vector<int>, size_t> bucket_of;
    std::vector<HermitianOperator> merged;
    for (int j = 0; j < m.size(); ++j) {
        double w = 0.0;
        for (int i = 0; i < e.size(); ++i)
            w += q[static_cast<size_t>(i)][static_cast<size_t>(j)];
        std::vector<int> key;
        if (w < kWeightFloor) {
            key = prior_order.rank;
        } else {
            std::vector<double> post(static_cast<size_t>(e.size()));
            for (int i = 0; i < e.size(); ++i)
                post[static_cast<size_t>(i)] =
                    q[static_cast<size_t>(i)][static_cast<size_t>(j)] / w;
            key = rank_key(std::move(post));
        }
        auto it = bucket_of.find(key);
        if (it == bucket_of.end()) {
            bucket_of.emplace(std::move(key), merged.size());
            merged.push_back(m.op(j));
        } else {
            merged[it->second] += m.op(j);
        }
    }
    return Povm::create(std::move(merged), completeness_tol);
}

std::vector<std::vector<int>> all_rank_vectors(int n) {
    if (n < 1 || n > 8)
        throw validation_error("rank vector enumeration supports 1 <= n <= 8");
    std::vector<int> r(static_cast<size_t>(n));
    std::iota(r.begin(), r.end(), 1);
    std::vector<std::vector<int>> all;
    do {
        all.push_back(r);
    } while (std::next_permutation(r.begin(), r.end()));
    return all;
}

} // namespace mgd
