#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgd/ensemble.hpp"

namespace mgd {

// Answer to "can any measurement beat the prior guesswork?": it cannot
// exactly when the weighted states are Loewner-ordered the same way as the
// probabilities, i.e. p_i >= p_j implies p_i rho_i >= p_j rho_j.
struct NoMeasurementVerdict {
    bool holds = false;
    std::optional<std::pair<int, int>> witness; // first (i, j) breaking the order
    double prior_guesswork = 0.0;
};

NoMeasurementVerdict check_no_measurement(const Ensemble& e);

// Pairs (i < j) with |p_i - p_j| <= 1e-12; the order condition then binds in
// both directions, forcing p_i rho_i = p_j rho_j.
std::vector<std::pair<int, int>> equal_probability_pairs(const Ensemble& e);

} // namespace mgd
