#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "mgd/criteria.hpp"
#include "mgd/ensemble.hpp"
#include "mgd/errors.hpp"
#include "mgd/fixtures.hpp"
#include "mgd/geo_uniform.hpp"
#include "mgd/guesswork.hpp"

using namespace mgd;

namespace {

constexpr double kPi = 3.141592653589793;

HermitianOperator diag2(double a, double b) {
    HermitianOperator m = HermitianOperator::zero(2);
    m.axpy(a, dyad({1.0, 0.0}));
    m.axpy(b, dyad({0.0, 1.0}));
    return m;
}

// Closed-form posterior of the three-ray qubit family after a rank-one
// outcome along (cos a, e^{ib} sin a).
std::vector<double> three_ray_posterior(double a, double b) {
    const double c2 = std::cos(2.0 * a);
    const double s2 = std::sin(2.0 * a);
    const double r3 = std::sqrt(3.0);
    return {(1.0 + c2) / 3.0, (2.0 - c2 - r3 * s2 * std::cos(b)) / 6.0,
            (2.0 - c2 + r3 * s2 * std::cos(b)) / 6.0};
}

} // namespace

// ---- rotations ---------------------------------------------------------------

TEST_CASE("rotation composition adds angles") {
    const double pairs[][2] = {{0.3, 1.1}, {2.0, -0.7}, {5.5, 4.0}, {-3.0, -3.0}};
    for (const auto& p : pairs) {
        const ComplexMatrix lhs = rotation_y(p[0]) * rotation_y(p[1]);
        CHECK(frobenius_distance(lhs, rotation_y(p[0] + p[1])) < 1e-12);
        CHECK(frobenius_distance(lhs, rotation_y(p[1]) * rotation_y(p[0])) < 1e-12);
    }
}

TEST_CASE("rotation period is four pi, with a sign flip at two pi") {
    CHECK(frobenius_distance(rotation_y(0.0), ComplexMatrix::identity(2)) == 0.0);
    for (double t : {0.0, 0.9, 2.5}) {
        CHECK(frobenius_distance(rotation_y(t + 4.0 * kPi), rotation_y(t)) < 1e-12);
        ComplexMatrix neg = rotation_y(t);
        neg *= cplx(-1.0, 0.0);
        CHECK(frobenius_distance(rotation_y(t + 2.0 * kPi), neg) < 1e-12);
    }
}

// ---- group validation -------------------------------------------------------------

TEST_CASE("group creation validates its elements") {
    CHECK_THROWS_AS(UnitaryGroup::create({}), validation_error);

    ComplexMatrix shear(2);
    shear(0, 0) = 1.0;
    shear(0, 1) = 1.0;
    shear(1, 1) = 1.0;
    CHECK_THROWS_WITH_AS(UnitaryGroup::create({ComplexMatrix::identity(2), shear}),
                         doctest::Contains("not unitary"), validation_error);

    CHECK_THROWS_WITH_AS(
        UnitaryGroup::create({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}),
        doctest::Contains("mismatched dimension"), validation_error);

    CHECK_THROWS_WITH_AS(
        UnitaryGroup::create({rotation_y(4.0 * kPi / 3.0), rotation_y(8.0 * kPi / 3.0)}),
        doctest::Contains("identity"), validation_error);

    // identity present but the set is not a group
    CHECK_THROWS_AS(UnitaryGroup::create({ComplexMatrix::identity(2), rotation_y(0.5 * kPi)}),
                    validation_error);
}

TEST_CASE("the three-fold rotation set closes exactly") {
    const auto g = UnitaryGroup::create(
        {rotation_y(0.0), rotation_y(4.0 * kPi / 3.0), rotation_y(8.0 * kPi / 3.0)});
    CHECK(g.size() == 3);
    CHECK(g.dim() == 2);
}

// ---- orbit generation --------------------------------------------------------------

TEST_CASE("generated ensembles carry the uniform prior over the orbit") {
    const auto spec = fixtures::trine_spec();
    const auto e = generate_ensemble(spec);
    REQUIRE(e.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(e.prob(i) == 1.0 / 3.0);
        const auto expect = conjugate(spec.group.element(i), spec.rho0);
        CHECK(frobenius_distance(e.state(i).matrix(), expect.matrix()) == 0.0);
    }
    // hand-computed rays at 0 and 120 degrees
    CHECK(frobenius_distance(e.state(0).matrix(), dyad({1.0, 0.0}).matrix()) < 1e-15);
    const double r3 = std::sqrt(3.0) / 2.0;
    CHECK(frobenius_distance(e.state(1).matrix(), dyad({-0.5, r3}).matrix()) < 1e-15);
    CHECK(frobenius_distance(e.average_state().matrix(),
                             HermitianOperator::scaled_identity(2, 0.5).matrix()) < 1e-15);

    GeoUniformSpec bad = spec;
    bad.rho0 = HermitianOperator::scaled_identity(3, 1.0 / 3.0);
    CHECK_THROWS_AS(generate_ensemble(bad), validation_error);
}

TEST_CASE("orbit measurements must resolve the identity") {
    const auto spec = fixtures::trine_spec();
    const auto povm = generate_povm(fixtures::trine_pi0(), spec.group);
    REQUIRE(povm.size() == 3);
    // orbit of a projector overshoots the identity
    CHECK_THROWS_WITH_AS(generate_povm(dyad({1.0, 0.0}), spec.group),
                         doctest::Contains("identity"), validation_error);
    // orbit of a scaled identity is a valid (uninformative) measurement
    const auto flat = generate_povm(HermitianOperator::scaled_identity(2, 1.0 / 3.0), spec.group);
    CHECK(conditional_guesswork(fixtures::trine(), flat).guesswork ==
          doctest::Approx(2.0).epsilon(1e-12));
}

// ---- posteriors against the closed form ------------------------------------------------

TEST_CASE("rank-one posteriors of the three-ray family match the closed form") {
    const auto e = fixtures::trine();
    for (int ia = 0; ia < 72; ++ia) {
        for (int ib = 0; ib < 72; ++ib) {
            const double a = kPi * ia / 72.0;
            const double b = 2.0 * kPi * ib / 72.0;
            const std::vector<cplx> ket = {std::cos(a), std::polar(std::sin(a), b)};
            const auto post = posterior(e, dyad(ket));
            const auto want = three_ray_posterior(a, b);
            CHECK(post.weight == doctest::Approx(0.5).epsilon(1e-12));
            for (int k = 0; k < 3; ++k)
                CHECK(post.dist.values()[size_t(k)] ==
                      doctest::Approx(want[size_t(k)]).epsilon(1e-10));
            CHECK(rank_one_guesswork(e, ket) ==
                  doctest::Approx(guesswork(Distribution::create(want))).epsilon(1e-10));
        }
    }
}

TEST_CASE("rank-one guesswork ignores the scale of the direction") {
    const auto e = fixtures::trine();
    const std::vector<cplx> ket = {cplx(0.6, 0.1), cplx(-0.3, 0.74)};
    std::vector<cplx> scaled_ket = ket;
    for (auto& c : scaled_ket) c *= 2.7;
    CHECK(rank_one_guesswork(e, ket) ==
          doctest::Approx(rank_one_guesswork(e, scaled_ket)).epsilon(1e-12));
}

// ---- rank-one minimization ---------------------------------------------------------------

TEST_CASE("the qubit minimizer finds the optimal direction for the three-ray family") {
    const auto e = fixtures::trine();
    const auto res = minimize_rank_one(e);
    CHECK_FALSE(res.heuristic);
    CHECK(res.value == doctest::Approx(2.0 - std::sqrt(3.0) / 3.0).epsilon(1e-7));
    REQUIRE(res.alpha.has_value());
    REQUIRE(res.beta.has_value());
    CHECK(rank_one_guesswork(e, res.ket) == doctest::Approx(res.value).epsilon(1e-9));
    CHECK(res.evaluations >= 720l * 720l);
}

TEST_CASE("higher-dimensional minimization is flagged heuristic and self-consistent") {
    const auto e = random_ensemble(3, 3, 77u);
    const auto res = minimize_rank_one(e);
    CHECK(res.heuristic);
    CHECK_FALSE(res.alpha.has_value());
    CHECK(res.value >= 1.0 - 1e-12);
    CHECK(rank_one_guesswork(e, res.ket) == doctest::Approx(res.value).epsilon(1e-9));
    // a minimizer never reports more than the value at probe directions
    for (int k = 0; k < 3; ++k) {
        std::vector<cplx> probe(3);
        probe[size_t(k)] = 1.0;
        CHECK(res.value <= rank_one_guesswork(e, probe) + 1e-9);
    }
}

// ---- symmetric-measurement sufficiency ------------------------------------------------

TEST_CASE("the rotated symmetric measurement is recognized as optimal") {
    const auto spec = fixtures::trine_spec();
    const auto e = fixtures::trine();
    const auto chk =
        check_geo_uniform_optimality(e, spec, fixtures::trine_pi0(), rotation_y(kPi / 6.0));
    CHECK(chk.commutes);
    CHECK_FALSE(chk.heuristic);
    CHECK(chk.optimal);
    const double want = 2.0 - std::sqrt(3.0) / 3.0;
    CHECK(chk.rank_one_min == doctest::Approx(want).epsilon(1e-7));
    CHECK(chk.candidate_value == doctest::Approx(want).epsilon(1e-7));
    CHECK(chk.povm_value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("a commuting but misaligned rotation is rejected") {
    const auto spec = fixtures::trine_spec();
    const auto chk = check_geo_uniform_optimality(fixtures::trine(), spec, fixtures::trine_pi0(),
                                                  rotation_y(0.3));
    CHECK(chk.commutes);
    CHECK_FALSE(chk.optimal);
    CHECK(chk.candidate_value > chk.rank_one_min + 1e-4);
}

TEST_CASE("a non-commuting intertwiner is detected") {
    ComplexMatrix phase(2);
    phase(0, 0) = 1.0;
    phase(1, 1) = cplx(0.0, 1.0);
    const auto chk = check_geo_uniform_optimality(fixtures::trine(), fixtures::trine_spec(),
                                                  fixtures::trine_pi0(), phase);
    CHECK_FALSE(chk.commutes);
    CHECK_FALSE(chk.optimal);
}

TEST_CASE("sufficiency checks validate their inputs") {
    const auto spec = fixtures::trine_spec();
    const auto e = fixtures::trine();

    ComplexMatrix shear(2);
    shear(0, 0) = 1.0;
    shear(0, 1) = 1.0;
    shear(1, 1) = 1.0;
    CHECK_THROWS_WITH_AS(check_geo_uniform_optimality(e, spec, fixtures::trine_pi0(), shear),
                         doctest::Contains("not unitary"), validation_error);

    // prior must be uniform
    const auto skewed =
        Ensemble::create({0.5, 0.25, 0.25}, {e.state(0), e.state(1), e.state(2)});
    CHECK_THROWS_WITH_AS(
        check_geo_uniform_optimality(skewed, spec, fixtures::trine_pi0(), rotation_y(0.0)),
        doctest::Contains("uniform"), validation_error);

    // states must be the orbit of the generator
    GeoUniformSpec wrong = spec;
    wrong.rho0 = HermitianOperator::scaled_identity(2, 0.5);
    CHECK_THROWS_WITH_AS(
        check_geo_uniform_optimality(e, wrong, fixtures::trine_pi0(), rotation_y(0.0)),
        doctest::Contains("orbit"), validation_error);
}

// ---- measurement-independence verdicts -----------------------------------------------

TEST_CASE("identical states admit no useful measurement") {
    const auto v = check_no_measurement(fixtures::identical_states());
    CHECK(v.holds);
    CHECK_FALSE(v.witness.has_value());
    CHECK(v.prior_guesswork == doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("the three-ray family yields a witness pair") {
    const auto v = check_no_measurement(fixtures::trine());
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->first == 0);
    CHECK(v.witness->second == 1);
    CHECK(v.prior_guesswork == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("ordered weighted states pass, order-breaking ones fail") {
    const auto nested = Ensemble::create(
        {0.8, 0.2}, {HermitianOperator::scaled_identity(2, 0.5), diag2(0.9, 0.1)});
    CHECK(check_no_measurement(nested).holds);

    const auto crossed = Ensemble::create({0.6, 0.4}, {diag2(1.0, 0.0), diag2(0.0, 1.0)});
    const auto v = check_no_measurement(crossed);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == std::pair<int, int>(0, 1));
}

TEST_CASE("equal probabilities force equal weighted states") {
    const auto same = Ensemble::create({0.5, 0.5}, {diag2(0.6, 0.4), diag2(0.6, 0.4)});
    CHECK(check_no_measurement(same).holds);
    CHECK(equal_probability_pairs(same) == std::vector<std::pair<int, int>>{{0, 1}});

    const auto differ = Ensemble::create({0.5, 0.5}, {diag2(0.7, 0.3), diag2(0.6, 0.4)});
    CHECK_FALSE(check_no_measurement(differ).holds);

    CHECK(equal_probability_pairs(fixtures::trine()) ==
          std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(equal_probability_pairs(fixtures::identical_states()).empty());
}
