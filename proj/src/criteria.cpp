#include "mgd/criteria.hpp"

#include <cmath>

#include "mgd/guesswork.hpp"

namespace mgd {

NoMeasurementVerdict check_no_measurement(const Ensemble& e) {
    NoMeasurementVerdict v;
    v.prior_guesswork = guesswork(e.prior());
    v.holds = true;
    const int n = e.size();
    for (int i = 0; i < n && v.holds; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || e.prob(i) < e.prob(j) - 1e-12)
                continue;
            const HermitianOperator low = scaled(e.state(j), e.prob(j));
            const HermitianOperator high = scaled(e.state(i), e.prob(i));
            if (!loewner_leq(low, high, 1e-9)) {
                v.holds = false;
                v.witness = {i, j};
                break;
            }
        }
    return v;
}

std::vector<std::pair<int, int>> equal_probability_pairs(const Ensemble& e) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < e.size(); ++i)
        for (int j = i + 1; j < e.size(); ++j)
            if (std::abs(e.prob(i) - e.prob(j)) <= 1e-12)
                pairs.emplace_back(i, j);
    return pairs;
}

} // namespace mgd
