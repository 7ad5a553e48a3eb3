#pragma once

#include <cstdint>

#include "mgd/ensemble.hpp"

namespace mgd {

enum class SearchMethod { grid, random_restart, refined };

// Direct measurement optimization; the independent check on the exact solver.
struct SearchResult {
    Povm best_povm;
    double best_value = 0.0; // re-evaluated from best_povm, never the search's own bookkeeping
    long evaluations = 0;
    SearchMethod method = SearchMethod::grid;
};

// Qubit-only exhaustive search: rank-one outcome directions on an
// (alpha, beta) grid — ket = (cos a, e^{ib} sin a), `resolution` points of b
// and resolution/4 + 1 points of a — weighted into a complete measurement by
// linear programming, then the support directions are polished by simplex
// descent below the grid pitch.  Deterministic; `seed` is accepted for
// interface symmetry and unused.
SearchResult search_qubit(const Ensemble& e, int resolution, std::uint64_t seed = 0);

// Any dimension: per restart, a seeded random rank-one pool (plus a fixed
// spanning set) is weighted by linear programming, equivalent outcomes are
// merged, and each surviving direction is refined in turn.  Deterministic
// for a fixed seed; more restarts never worsen the result.
SearchResult search_general(const Ensemble& e, int restarts, std::uint64_t seed);

} // namespace mgd
