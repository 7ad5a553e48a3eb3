#pragma once

#include <vector>

#include "mgd/ensemble.hpp"

namespace mgd {

// A guessing order over the ensemble labels: rank[i] is the (1-based)
// position at which label i is queried.
struct GuessStrategy {
    std::vector<int> rank;

    // Labels in query order: order()[r] is the label queried at rank r+1.
    std::vector<int> order() const;
};

// Sort labels by descending probability, ties broken by ascending index.
GuessStrategy optimal_strategy(const Distribution& d);

// Expected number of queries sum_i rank[i] * p[i] under a given order.
double strategy_value(const Distribution& d, const GuessStrategy& s);

// Expected number of queries under the optimal order.  Lies in
// [1, (n+1)/2]; equals (n+1)/2 exactly for the uniform distribution.
double guesswork(const Distribution& d);

// 1 - max_i p_i: chance the single most likely guess is wrong.
double error_probability(const Distribution& d);

struct OutcomeEval {
    double weight;
    double guesswork; // 0 when skipped
    double error;     // 0 when skipped
    bool skipped;     // weight below 1e-12; contributes zero
};

struct EvalReport {
    double guesswork;
    double error_prob;
    std::vector<OutcomeEval> per_outcome;
};

// Guesswork of the label given the measurement record:
//   G = sum_j p(y_j) * guesswork(posterior_j),
// plus the matching error probability 1 - sum_j max_i p_i Tr(rho_i pi_j).
EvalReport conditional_guesswork(const Ensemble& e, const Povm& m);
double conditional_error(const Ensemble& e, const Povm& m);

// Outcomes sharing an optimal guessing order are interchangeable: merging
// them (summing their POVM elements) never changes the conditional
// guesswork.  The result has at most n! elements.  Zero-weight outcomes are
// folded into the prior-optimal bucket.
Povm merge_equivalent_outcomes(const Ensemble& e, const Povm& m, double completeness_tol = 1e-9);

// All n! rank vectors in lexicographic order (n <= 8 guarded).
std::vector<std::vector<int>> all_rank_vectors(int n);

} // namespace mgd
