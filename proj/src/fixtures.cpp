#include "mgd/fixtures.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "mgd/errors.hpp"

namespace mgd::fixtures {
namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

} // namespace

GeoUniformSpec trine_spec() {
    std::vector<ComplexMatrix> g{rotation_y(0.0), rotation_y(4.0 * kPi / 3.0),
                                 rotation_y(8.0 * kPi / 3.0)};
    return GeoUniformSpec{dyad({1.0, 0.0}), UnitaryGroup::create(std::move(g))};
}

Ensemble trine() { return generate_ensemble(trine_spec()); }

HermitianOperator trine_pi0() { return scaled(dyad({1.0, 0.0}), 2.0 / 3.0); }

Povm trine_povm_e() { return generate_povm(trine_pi0(), trine_spec().group); }

ComplexMatrix trine_optimal_rotation() { return rotation_y(kPi / 6.0); }

Povm trine_povm_g() {
    const ComplexMatrix v = trine_optimal_rotation();
    const Povm base = trine_povm_e();
    std::vector<HermitianOperator> ops;
    ops.reserve(static_cast<size_t>(base.size()));
    for (const auto& op : base.ops()) ops.push_back(conjugate(v, op));
    return Povm::create(std::move(ops));
}

Ensemble basis_complement() {
    const int d = 5;
    std::vector<double> probs(static_cast<size_t>(d), 1.0 / d);
    std::vector<HermitianOperator> states;
    states.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        HermitianOperator s = HermitianOperator::scaled_identity(d, 0.25);
        std::vector<cplx> ei(static_cast<size_t>(d));
        ei[static_cast<size_t>(i)] = 1.0;
        s.axpy(-0.25, dyad(ei));
        states.push_back(std::move(s));
    }
    return Ensemble::create(std::move(probs), std::move(states));
}

Ensemble geometric_tail(int terms) {
    if (terms < 3) throw validation_error("geometric_tail needs at least 3 terms");
    std::vector<double> probs;
    std::vector<HermitianOperator> states;
    probs.reserve(static_cast<size_t>(terms));
    states.reserve(static_cast<size_t>(terms));

    auto diag = [](double a, double b) {
        HermitianOperator m = HermitianOperator::zero(2);
        m.axpy(a, dyad({1.0, 0.0}));
        m.axpy(b, dyad({0.0, 1.0}));
        return m;
    };
    probs.push_back(3.0 / 8.0);
    states.push_back(diag(2.0 / 3.0, 1.0 / 3.0));
    probs.push_back(3.0 / 8.0);
    states.push_back(diag(1.0 / 3.0, 2.0 / 3.0));
    for (int i = 3; i <= terms; ++i) {
        probs.push_back(std::ldexp(1.0, -i));
        states.push_back(HermitianOperator::scaled_identity(2, 0.5));
    }
    return Ensemble::create(std::move(probs), std::move(states));
}

Povm computational_basis_povm(int d) {
    if (d < 1) throw validation_error("dimension must be positive");
    std::vector<HermitianOperator> ops;
    ops.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        std::vector<cplx> ei(static_cast<size_t>(d));
        ei[static_cast<size_t>(i)] = 1.0;
        ops.push_back(dyad(ei));
    }
    return Povm::create(std::move(ops));
}

Ensemble helstrom_pair() {
    const double r = 1.0 / std::sqrt(2.0);
    return Ensemble::create({0.5, 0.5}, {dyad({1.0, 0.0}), dyad({r, r})});
}

Ensemble identical_states() {
    HermitianOperator rho = HermitianOperator::zero(2);
    rho.axpy(0.6, dyad({1.0, 0.0}));
    rho.axpy(0.4, dyad({0.0, 1.0}));
    return Ensemble::create({0.7, 0.3}, {rho, rho});
}

} // namespace mgd::fixtures
