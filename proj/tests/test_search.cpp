#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mgd/ensemble.hpp"
#include "mgd/errors.hpp"
#include "mgd/fixtures.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/povm_search.hpp"
#include "mgd/sdp.hpp"

using namespace mgd;

TEST_CASE("the qubit grid search recovers the known three-ray optimum") {
    const auto e = fixtures::trine();
    const auto res = search_qubit(e, 360);
    CHECK(res.best_value == doctest::Approx(2.0 - std::sqrt(3.0) / 3.0).epsilon(1e-6));
    CHECK(res.evaluations > 0);
    // the reported value is the exact evaluation of the reported measurement
    CHECK(conditional_guesswork(e, res.best_povm).guesswork ==
          doctest::Approx(res.best_value).epsilon(1e-12));
}

TEST_CASE("search values upper-bound the exact optimum") {
    for (int t = 0; t < 6; ++t) {
        const auto e = random_ensemble(2, 3, 4200 + std::uint64_t(t));
        const auto sol = solve_mgd(e);
        const auto res = search_qubit(e, 96);
        CHECK(res.best_value >= sol.objective - 1e-9);
        // a modest grid should already land close for qubit triples
        CHECK(res.best_value <= sol.objective + 0.05);
    }
}

TEST_CASE("searched measurements are valid and self-consistent in any dimension") {
    const auto e = random_ensemble(3, 4, 99u);
    const auto res = search_general(e, 2, 0x5eedu);
    const auto sol = solve_mgd(e);
    CHECK(res.best_value >= sol.objective - 1e-9);
    CHECK(res.best_value <= guesswork(e.prior()) + 1e-9);
    CHECK(conditional_guesswork(e, res.best_povm).guesswork ==
          doctest::Approx(res.best_value).epsilon(1e-12));
}

TEST_CASE("restart prefixes only improve the general search") {
    const auto e = random_ensemble(3, 3, 1234u);
    const auto two = search_general(e, 2, 7u);
    const auto four = search_general(e, 4, 7u);
    CHECK(four.best_value <= two.best_value + 1e-12);
}

TEST_CASE("searches are deterministic for a fixed seed") {
    const auto e = random_ensemble(3, 3, 55u);
    const auto a = search_general(e, 2, 9u);
    const auto b = search_general(e, 2, 9u);
    CHECK(a.best_value == b.best_value);
    CHECK(a.evaluations == b.evaluations);

    const auto q1 = search_qubit(fixtures::trine(), 64);
    const auto q2 = search_qubit(fixtures::trine(), 64);
    CHECK(q1.best_value == q2.best_value);
}

TEST_CASE("identical states leave nothing to search for") {
    const auto e = fixtures::identical_states();
    const auto res = search_qubit(e, 32);
    CHECK(res.best_value == doctest::Approx(guesswork(e.prior())).epsilon(1e-9));
}

TEST_CASE("search input validation") {
    CHECK_THROWS_AS(search_qubit(fixtures::basis_complement(), 64), validation_error);
    CHECK_THROWS_AS(search_qubit(fixtures::trine(), 4), validation_error);
    CHECK_THROWS_AS(search_general(fixtures::trine(), 0, 1u), validation_error);
}
