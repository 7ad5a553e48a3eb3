// Acceptance gate: runs the full published-number and property checklist and
// prints one PASS/FAIL line per criterion.  Exits nonzero if any line fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "mgd/bounds.hpp"
#include "mgd/criteria.hpp"
#include "mgd/ensemble.hpp"
#include "mgd/errors.hpp"
#include "mgd/fixtures.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/io.hpp"
#include "mgd/povm_search.hpp"
#include "mgd/rng.hpp"
#include "mgd/sdp.hpp"

using namespace mgd;

namespace {

std::string fixture(const std::string& name) {
    return std::string(MGD_FIXTURE_DIR) + "/" + name;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// Every guesswork solve with n <= 5 flows through here: the worst slack over
// all n! query orders is recomputed independently of the solver's own audit.
struct SlackAudit {
    long solves = 0;
    double worst = std::numeric_limits<double>::infinity();

    void record(const Ensemble& e, const MgdSolution& sol) {
        if (e.size() > 5) return;
        double w = std::numeric_limits<double>::infinity();
        for (const auto& rank : all_rank_vectors(e.size())) {
            HermitianOperator s = strategy_operator(e, rank);
            s -= sol.a;
            w = std::min(w, eig(s).min_eigenvalue());
        }
        ++solves;
        worst = std::min(worst, w);
    }
};

SlackAudit g_audit;

std::vector<double> random_simplex(int n, Rng& rng) {
    std::vector<double> p(static_cast<size_t>(n));
    double s = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        s += v;
    }
    for (auto& v : p) v /= s;
    return p;
}

int g_failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail, double ms) {
    if (!ok) ++g_failures;
    std::printf("[%s] criterion %2d: %-58s %s  (%.0f ms)\n", ok ? "PASS" : "FAIL", num, name,
                detail.c_str(), ms);
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- criteria -----------------------------------------------------------------

void criterion_1_2_3() {
    Timer t;
    const Ensemble trine = load_problem(fixture("trine.json")).ensemble;
    const MgdSolution sol = solve_mgd(trine, {});
    g_audit.record(trine, sol);
    const double want = 2.0 - std::sqrt(3.0) / 3.0;
    const double err = std::abs(sol.objective - want);
    const double ms1 = t.ms();
    report(1, "minimum guesswork on the bundled three-ray fixture",
           err <= 1e-6 && ms1 < 5000.0, fmt("g_opt=%.9f err=%.1e", sol.objective, err), ms1);

    Timer t2;
    const Povm povm_e = load_povm(fixture("trine_povm_e.json"));
    const Povm povm_g = load_povm(fixture("trine_povm_g.json"));
    const EvalReport ev_e = conditional_guesswork(trine, povm_e);
    const EvalReport ev_g = conditional_guesswork(trine, povm_g);
    const double e1 = std::abs(ev_e.guesswork - 1.5);
    const double e2 = std::abs(ev_e.error_prob - 1.0 / 3.0);
    const double e3 = std::abs(ev_g.error_prob - (2.0 / 3.0 - std::sqrt(3.0) / 6.0));
    const double e4 = std::abs(ev_g.guesswork - want);
    report(2, "three-ray measurement evaluations",
           e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 1e-9 && e4 <= 1e-9,
           fmt("max dev=%.1e", std::max(std::max(e1, e2), std::max(e3, e4))), t2.ms());

    Timer t3;
    const Certificate good = certify(trine, povm_g);
    const Certificate bad = certify(trine, povm_e);
    report(3, "certificate discrimination on the three-ray fixture",
           good.passed() && !bad.passed(),
           fmt("optimal=%.1e pgm=%.1e", good.worst_violation, bad.worst_violation), t3.ms());
}

void criterion_4() {
    Timer t;
    double worst_identity = 0.0, worst_closed = 0.0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + i % 3;
        const Ensemble e = random_ensemble(d, 2, 0x4000u + static_cast<std::uint64_t>(i));
        const MgdSolution sol = solve_mgd(e, {});
        g_audit.record(e, sol);
        const MedSolution med = solve_med(e, {});
        const double dev_id = std::abs(sol.objective - (med.p_err + 1.0));
        const double dev_cf = std::abs(med.p_err - helstrom_error(e));
        worst_identity = std::max(worst_identity, dev_id);
        worst_closed = std::max(worst_closed, dev_cf);
        ok = ok && dev_id <= 1e-6 && dev_cf <= 1e-7;
    }
    report(4, "two-state guesswork/error identity and closed form", ok,
           fmt("identity=%.1e closed=%.1e", worst_identity, worst_closed), t.ms());
}

void criterion_5() {
    Timer t;
    bool ok = true;
    double worst_lo = 0.0, worst_hi = 0.0; // signed violations, positive = bad
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + i % 3;
        const int d = 2 + (i / 3) % 3;
        const Ensemble e = random_ensemble(d, n, 0x5000u + static_cast<std::uint64_t>(i));
        const MgdSolution sol = solve_mgd(e, {});
        g_audit.record(e, sol);
        const MedSolution med = solve_med(e, {});
        const double lower = g_lower_from_error(med.p_err);
        const double upper = g_upper_from_error(n, med.p_err);
        worst_lo = std::max(worst_lo, lower - sol.objective);
        worst_hi = std::max(worst_hi, sol.objective - upper);
        ok = ok && lower - 1e-7 <= sol.objective && sol.objective <= upper + 1e-7;
    }
    report(5, "optimal guesswork sandwiched by the optimal error", ok,
           fmt("worst lower=%.1e upper=%.1e", worst_lo, worst_hi), t.ms());
}

void criterion_6() {
    Timer t;
    const Ensemble tail = fixtures::geometric_tail(30);
    const EntropyPack pack = entropy_pack(tail);
    const double want_h = 13.0 / 4.0 - 0.75 * std::log2(3.0);
    const double g_basis =
        conditional_guesswork(tail, fixtures::computational_basis_povm(2)).guesswork;
    const double bound = g_lower_from_entropy(pack.shannon_H - pack.holevo_chi);
    const double e1 = std::abs(pack.shannon_H - want_h);
    const double e2 = std::abs(pack.holevo_chi - (want_h - 2.0));
    const double e3 = std::abs(g_basis - 2.0);
    const double e4 = std::abs(bound - g_basis);
    report(6, "diagonal-tail entropies and entropy-bound equality",
           e1 <= 1e-6 && e2 <= 1e-6 && e3 <= 1e-5 && e4 <= 1e-5,
           fmt("H=%.1e chi=%.1e g=%.1e eq=%.1e", e1, e2, e3, e4), t.ms());
}

void criterion_7() {
    Timer t;
    const EntropyFloor floor =
        posterior_entropy_floor(fixtures::basis_complement(), 10000, 0x61636355u);
    report(7, "posterior entropy floor on the five-dimensional fixture",
           floor.min_entropy >= 2.0 - 1e-9, fmt("min H=%.12f", floor.min_entropy), t.ms());
}

void criterion_8() {
    Timer t;
    bool ok = true;
    double worst_same = 0.0, worst_margin = std::numeric_limits<double>::infinity();
    Rng rng(0x80008u);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 3;
        const int d = 2 + (i / 3) % 3;
        const HermitianOperator rho = random_density(d, rng);
        const Ensemble e = Ensemble::create(
            random_simplex(n, rng), std::vector<HermitianOperator>(static_cast<size_t>(n), rho));
        const NoMeasurementVerdict v = check_no_measurement(e);
        const MgdSolution sol = solve_mgd(e, {});
        g_audit.record(e, sol);
        const double dev = std::abs(sol.objective - guesswork(e.prior()));
        worst_same = std::max(worst_same, dev);
        ok = ok && v.holds && dev <= 1e-6;
    }
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 3;
        const int d = 2 + (i / 3) % 3;
        std::vector<HermitianOperator> states;
        for (int k = 0; k < n; ++k) states.push_back(random_density(d, rng));
        const Ensemble e = Ensemble::create(
            std::vector<double>(static_cast<size_t>(n), 1.0 / n), std::move(states));
        const NoMeasurementVerdict v = check_no_measurement(e);
        const MgdSolution sol = solve_mgd(e, {});
        g_audit.record(e, sol);
        const double margin = guesswork(e.prior()) - sol.objective;
        worst_margin = std::min(worst_margin, margin);
        ok = ok && !v.holds && margin > 1e-6;
    }
    report(8, "measurement-uselessness verdict is sound both ways", ok,
           fmt("identical dev=%.1e distinct margin=%.2e", worst_same, worst_margin), t.ms());
}

void criterion_9() {
    Timer t;
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Ensemble e = random_ensemble(2, 3, 0x9000u + static_cast<std::uint64_t>(i));
        const MgdSolution sol = solve_mgd(e, {});
        g_audit.record(e, sol);
        const SearchResult sr = search_qubit(e, 180);
        const double dev = std::abs(sr.best_value - sol.objective);
        worst = std::max(worst, dev);
        ok = ok && dev <= 1e-3;
    }
    report(9, "direct measurement search agrees with the solver", ok,
           fmt("worst |search-solve|=%.2e", worst), t.ms());
}

void criterion_10() {
    Timer t;
    bool ok = true;
    double worst = 0.0; // positive = violation
    auto note = [&](double violation) {
        worst = std::max(worst, violation);
        ok = ok && violation <= 1e-9;
    };

    Rng rng(0xa000au);
    for (int i = 0; i < 1000; ++i) {
        const int n = 2 + i % 7;
        const Distribution d = Distribution::create(random_simplex(n, rng));
        const double g = guesswork(d);
        const double p = error_probability(d);
        const double h = shannon_entropy(d);
        note(g - g_upper_from_error(n, p));
        note(g_lower_from_error(p) - g);
        if (h >= 2.0) note(g_lower_from_entropy(h) - g);
        note(g - g_upper_from_entropy(n, h));
    }

    int guarded_pairs = 0;
    for (int i = 0; i < 200; ++i) {
        Ensemble e = fixtures::basis_complement();
        Povm m = random_povm(5, 4, 0xa100u);
        if (i > 0) {
            const int n = 2 + i % 4;
            const int d = 2 + i % 3;
            e = random_ensemble(d, n, 0xa200u + static_cast<std::uint64_t>(i));
            m = random_povm(d, 2 + i % 4, 0xa300u + static_cast<std::uint64_t>(i));
        }
        const int n = e.size();
        const EvalReport ev = conditional_guesswork(e, m);
        double h_cond = 0.0;
        bool guard = true;
        for (int j = 0; j < m.size(); ++j) {
            try {
                const PosteriorResult post = posterior(e, m.op(j));
                const double hy = shannon_entropy(post.dist);
                h_cond += post.weight * hy;
                guard = guard && hy >= 2.0 - 1e-9;
            } catch (const degenerate_outcome&) {
            }
        }
        note(ev.guesswork - g_upper_from_error(n, ev.error_prob));
        note(g_lower_from_error(ev.error_prob) - ev.guesswork);
        note(ev.guesswork - g_upper_from_entropy(n, h_cond));
        if (guard) {
            note(g_lower_from_entropy(h_cond) - ev.guesswork);
            ++guarded_pairs;
        }
    }
    ok = ok && guarded_pairs >= 1;

    // equality fixtures
    double worst_eq = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const Distribution u = Distribution::create(std::vector<double>(k, 1.0 / k));
        worst_eq = std::max(worst_eq,
                            std::abs(g_lower_from_error(error_probability(u)) - guesswork(u)));
        if (k >= 2)
            worst_eq = std::max(
                worst_eq, std::abs(g_upper_from_entropy(k, shannon_entropy(u)) - guesswork(u)));
    }
    const Distribution point = Distribution::create({1.0, 0.0, 0.0});
    worst_eq =
        std::max(worst_eq, std::abs(g_upper_from_entropy(3, shannon_entropy(point)) - 1.0));
    ok = ok && worst_eq <= 1e-10;

    report(10, "bound suite with equality fixtures", ok,
           fmt("worst violation=%.1e equality=%.1e guarded=%d", worst, worst_eq, guarded_pairs),
           t.ms());
}

void criterion_11() {
    Timer t;
    report(11, "independent full-order slack audit of every small solve",
           g_audit.solves > 0 && g_audit.worst >= -1e-8,
           fmt("solves=%ld worst slack=%.2e", g_audit.solves, g_audit.worst), t.ms());
}

} // namespace

int main() {
    Timer total;
    try {
        criterion_1_2_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
        criterion_8();
        criterion_9();
        criterion_10();
        criterion_11();
    } catch (const std::exception& err) {
        std::printf("[FAIL] unexpected exception: %s\n", err.what());
        return 1;
    }
    std::printf("acceptance: %d/11 criteria passed in %.1f s\n", 11 - g_failures,
                total.ms() / 1000.0);
    return g_failures == 0 ? 0 : 1;
}
