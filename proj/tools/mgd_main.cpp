// Command-line front end: loads problem files, runs the library, and prints
// human tables or a single sorted-key JSON object (--json).  Exit codes:
// 0 ok, 2 input validation, 3 solver failure, 4 tolerance breach in repro.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mgd/bounds.hpp"
#include "mgd/criteria.hpp"
#include "mgd/errors.hpp"
#include "mgd/fixtures.hpp"
#include "mgd/geo_uniform.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/io.hpp"
#include "mgd/povm_search.hpp"
#include "mgd/sdp.hpp"

namespace {

using mgd::validation_error;
using ResultValue = std::variant<double, bool, std::int64_t, std::string>;

struct RunReport {
    std::string command;
    std::string input;
    std::string digest;
    std::map<std::string, ResultValue> results;
    std::vector<std::string> diagnostics;
    double wall_ms = 0.0;
};

std::string fnv1a_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

void emit(const RunReport& rep, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["command"] = rep.command;
        j["input"] = rep.input;
        j["digest"] = rep.digest;
        nlohmann::json res;
        for (const auto& [k, v] : rep.results)
            std::visit([&](const auto& x) { res[k] = x; }, v);
        j["results"] = std::move(res);
        j["diagnostics"] = rep.diagnostics;
        j["wall_ms"] = rep.wall_ms;
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::printf("== %s ==\n", rep.command.c_str());
    if (!rep.input.empty()) std::printf("input:  %s  (%s)\n", rep.input.c_str(), rep.digest.c_str());
    for (const auto& [k, v] : rep.results) {
        std::printf("%-36s ", k.c_str());
        if (std::holds_alternative<double>(v))
            std::printf("%.12g\n", std::get<double>(v));
        else if (std::holds_alternative<bool>(v))
            std::printf("%s\n", std::get<bool>(v) ? "true" : "false");
        else if (std::holds_alternative<std::int64_t>(v))
            std::printf("%lld\n", static_cast<long long>(std::get<std::int64_t>(v)));
        else
            std::printf("%s\n", std::get<std::string>(v).c_str());
    }
    for (const auto& d : rep.diagnostics) std::printf("%s\n", d.c_str());
    std::printf("wall: %.1f ms\n", rep.wall_ms);
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void put_solution_fields(RunReport& rep, const mgd::MgdSolution& sol) {
    rep.results["g_opt"] = sol.objective;
    rep.results["gap_estimate"] = sol.duality_gap_estimate;
    rep.results["converged"] = sol.converged;
    rep.results["exhaustive"] = sol.exhaustive;
    rep.results["audited"] = sol.audited;
    rep.results["audit_min_slack"] = sol.audit_min_slack;
    rep.results["centerings"] = static_cast<std::int64_t>(sol.path.size());
    rep.results["active_orders"] = static_cast<std::int64_t>(sol.active_set.size());
}

void put_certificate_fields(RunReport& rep, const mgd::Certificate& cert) {
    rep.results["cert_passed"] = cert.passed();
    rep.results["cert_worst_violation"] = cert.worst_violation;
    rep.results["cert_hermiticity_residual"] = cert.hermiticity_residual;
    rep.results["cert_exhaustive"] = cert.exhaustive;
}

int cmd_guesswork(const std::string& file, const std::string& povm_file, bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "guesswork";
    rep.input = file;
    rep.digest = fnv1a_digest(file);
    const mgd::ProblemFile prob = mgd::load_problem(file);
    rep.results["n"] = static_cast<std::int64_t>(prob.ensemble.size());
    rep.results["dim"] = static_cast<std::int64_t>(prob.ensemble.dim());

    std::optional<mgd::Povm> povm;
    if (!povm_file.empty())
        povm = mgd::load_povm(povm_file);
    else if (prob.povm)
        povm = prob.povm;

    if (!povm) {
        rep.results["g"] = mgd::guesswork(prob.ensemble.prior());
        rep.results["p_err"] = mgd::error_probability(prob.ensemble.prior());
        rep.results["conditional"] = false;
    } else {
        const mgd::EvalReport ev = mgd::conditional_guesswork(prob.ensemble, *povm);
        rep.results["g"] = ev.guesswork;
        rep.results["p_err"] = ev.error_prob;
        rep.results["conditional"] = true;
        rep.results["outcomes"] = static_cast<std::int64_t>(ev.per_outcome.size());
        rep.diagnostics.push_back("outcome      weight        guesswork         error");
        for (size_t j = 0; j < ev.per_outcome.size(); ++j) {
            const auto& oc = ev.per_outcome[j];
            char line[128];
            std::snprintf(line, sizeof line, "%7zu  %12.9f  %15.12f  %12.9f%s", j, oc.weight,
                          oc.guesswork, oc.error, oc.skipped ? "  (skipped)" : "");
            rep.diagnostics.push_back(line);
        }
    }
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return 0;
}

int cmd_min_guesswork(const std::string& file, bool do_certify, bool do_recover, bool do_oracle,
                      const std::string& out_path, bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "min-guesswork";
    rep.input = file;
    rep.digest = fnv1a_digest(file);
    const mgd::ProblemFile prob = mgd::load_problem(file);
    const mgd::Ensemble& e = prob.ensemble;
    rep.results["n"] = static_cast<std::int64_t>(e.size());
    rep.results["dim"] = static_cast<std::int64_t>(e.dim());
    rep.results["g_prior"] = mgd::guesswork(e.prior());

    const mgd::MgdSolution sol = mgd::solve_mgd(e, {});
    put_solution_fields(rep, sol);

    if (do_certify || do_recover) {
        const mgd::PovmRecovery rec = mgd::recover_povm(e, sol);
        rep.results["recover_ok"] = rec.ok;
        if (rec.ok) {
            rep.results["recover_value"] = rec.value;
            rep.results["povm_outcomes"] = static_cast<std::int64_t>(rec.povm->size());
            const mgd::Certificate cert = mgd::certify(e, *rec.povm);
            put_certificate_fields(rep, cert);
            if (do_recover) {
                mgd::save_povm(out_path, *rec.povm);
                rep.results["povm_file"] = out_path;
            }
        } else {
            rep.results["recover_reason"] = rec.failure_reason;
        }
    }
    if (do_oracle) {
        const mgd::SearchResult sr = e.dim() == 2 ? mgd::search_qubit(e, 360, 0)
                                                  : mgd::search_general(e, 8, 0x6f7261u);
        rep.results["oracle_value"] = sr.best_value;
        rep.results["oracle_excess"] = sr.best_value - sol.objective;
        rep.results["oracle_evaluations"] = static_cast<std::int64_t>(sr.evaluations);
        rep.results["oracle_method"] = sr.method == mgd::SearchMethod::grid ? "grid"
                                       : sr.method == mgd::SearchMethod::refined
                                           ? "refined"
                                           : "random-restart";
    }
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return 0;
}

int cmd_min_error(const std::string& file, bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "min-error";
    rep.input = file;
    rep.digest = fnv1a_digest(file);
    const mgd::ProblemFile prob = mgd::load_problem(file);
    const mgd::Ensemble& e = prob.ensemble;
    rep.results["n"] = static_cast<std::int64_t>(e.size());
    rep.results["dim"] = static_cast<std::int64_t>(e.dim());

    const mgd::MedSolution sol = mgd::solve_med(e, {});
    rep.results["p_err_opt"] = sol.p_err;
    rep.results["success_prob"] = sol.success_prob;
    rep.results["gap_estimate"] = sol.duality_gap_estimate;
    rep.results["converged"] = sol.converged;
    rep.results["centerings"] = static_cast<std::int64_t>(sol.path.size());
    if (e.size() == 2) rep.results["two_state_closed_form"] = mgd::helstrom_error(e);
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return 0;
}

int cmd_bounds(const std::string& file, const std::optional<double>& p_err_opt,
               const std::optional<double>& p_inc, bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "bounds";
    rep.input = file;
    rep.digest = fnv1a_digest(file);
    const mgd::ProblemFile prob = mgd::load_problem(file);
    const mgd::Ensemble& e = prob.ensemble;

    const mgd::EntropyPack pack = mgd::entropy_pack(e);
    rep.results["shannon_H"] = pack.shannon_H;
    rep.results["von_neumann_S"] = pack.von_neumann_S;
    rep.results["holevo_chi"] = pack.holevo_chi;
    rep.results["subentropy_Q"] = pack.subentropy_Q;
    rep.results["g_prior"] = mgd::guesswork(e.prior());

    mgd::ReferenceValues refs;
    refs.p_err_opt = p_err_opt;
    refs.p_inc = p_inc;
    const auto reports = mgd::bound_suite(e, refs);
    rep.diagnostics.push_back(
        "bound                              value        side   applies  consistent");
    for (const auto& r : reports) {
        rep.results["bound." + r.name + ".value"] = r.value;
        rep.results["bound." + r.name + ".applies"] = r.precondition_met;
        if (r.consistent) rep.results["bound." + r.name + ".consistent"] = *r.consistent;
        char line[160];
        std::snprintf(line, sizeof line, "%-32s %14.9f  %-5s  %-7s  %s%s", r.name.c_str(), r.value,
                      r.side == mgd::BoundSide::lower ? "lower" : "upper",
                      r.precondition_met ? "yes" : "no",
                      r.consistent ? (*r.consistent ? "yes" : "VIOLATED") : "-",
                      r.precondition_note.empty() ? "" : ("  [" + r.precondition_note + "]").c_str());
        rep.diagnostics.push_back(line);
    }
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return 0;
}

int cmd_check(const std::string& file, bool no_measurement, const std::string& theorem5_file,
              bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "check";
    rep.input = file;
    rep.digest = fnv1a_digest(file);
    const mgd::ProblemFile prob = mgd::load_problem(file);
    const mgd::Ensemble& e = prob.ensemble;

    if (no_measurement == !theorem5_file.empty())
        throw validation_error("check needs exactly one of --no-measurement / --theorem5");

    if (no_measurement) {
        const mgd::NoMeasurementVerdict v = mgd::check_no_measurement(e);
        rep.results["mode"] = std::string("no-measurement");
        rep.results["holds"] = v.holds;
        rep.results["prior_guesswork"] = v.prior_guesswork;
        if (v.witness) {
            rep.results["witness_i"] = static_cast<std::int64_t>(v.witness->first);
            rep.results["witness_j"] = static_cast<std::int64_t>(v.witness->second);
        }
    } else {
        const mgd::OptimalityFile of = mgd::load_optimality_check(theorem5_file);
        const mgd::GeoOptimality chk =
            mgd::check_geo_uniform_optimality(e, of.spec, of.pi0, of.v);
        rep.results["mode"] = std::string("symmetric-optimality");
        rep.results["commutes"] = chk.commutes;
        rep.results["rank_one_min"] = chk.rank_one_min;
        rep.results["candidate_value"] = chk.candidate_value;
        rep.results["povm_value"] = chk.povm_value;
        rep.results["optimal"] = chk.optimal;
        rep.results["heuristic"] = chk.heuristic;
    }
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return 0;
}

// All published reference numbers in one pass; exit 4 on any breach.
int cmd_repro(bool as_json) {
    Timer timer;
    RunReport rep;
    rep.command = "repro-paper";
    rep.input = "";
    rep.digest = "builtin";
    bool all_ok = true;

    auto check = [&](const std::string& name, double measured, double expected, double tol) {
        const bool ok = std::abs(measured - expected) <= tol;
        all_ok = all_ok && ok;
        rep.results[name + ".measured"] = measured;
        rep.results[name + ".expected"] = expected;
        rep.results[name + ".pass"] = ok;
        char line[160];
        std::snprintf(line, sizeof line, "%-34s %18.12f  want %18.12f  tol %7.1e  %s", name.c_str(),
                      measured, expected, tol, ok ? "PASS" : "FAIL");
        rep.diagnostics.push_back(line);
    };
    auto check_flag = [&](const std::string& name, bool measured, bool expected) {
        const bool ok = measured == expected;
        all_ok = all_ok && ok;
        rep.results[name + ".pass"] = ok;
        char line[160];
        std::snprintf(line, sizeof line, "%-34s %5s  want %5s  %s", name.c_str(),
                      measured ? "true" : "false", expected ? "true" : "false",
                      ok ? "PASS" : "FAIL");
        rep.diagnostics.push_back(line);
    };

    const double g_trine = 2.0 - std::sqrt(3.0) / 3.0;
    const auto trine = mgd::fixtures::trine();
    const auto povm_e = mgd::fixtures::trine_povm_e();
    const auto povm_g = mgd::fixtures::trine_povm_g();

    const auto ev_e = mgd::conditional_guesswork(trine, povm_e);
    const auto ev_g = mgd::conditional_guesswork(trine, povm_g);
    check("trine.g_given_e", ev_e.guesswork, 1.5, 1e-9);
    check("trine.p_err_given_e", ev_e.error_prob, 1.0 / 3.0, 1e-9);
    check("trine.g_given_g", ev_g.guesswork, g_trine, 1e-9);
    check("trine.p_err_given_g", ev_g.error_prob, 2.0 / 3.0 - std::sqrt(3.0) / 6.0, 1e-9);

    const auto sol = mgd::solve_mgd(trine, {});
    check("trine.g_opt", sol.objective, g_trine, 1e-6);
    const auto med = mgd::solve_med(trine, {});
    check("trine.p_err_opt", med.p_err, 1.0 / 3.0, 1e-6);
    check_flag("trine.certify_optimal_povm", mgd::certify(trine, povm_g).passed(), true);
    check_flag("trine.certify_pgm", mgd::certify(trine, povm_e).passed(), false);

    const auto chk = mgd::check_geo_uniform_optimality(trine, mgd::fixtures::trine_spec(),
                                                       mgd::fixtures::trine_pi0(),
                                                       mgd::fixtures::trine_optimal_rotation());
    check_flag("trine.symmetric_optimal", chk.optimal, true);
    check("trine.rank_one_min", chk.rank_one_min, g_trine, 1e-6);

    const auto pair = mgd::fixtures::helstrom_pair();
    const auto med2 = mgd::solve_med(pair, {});
    check("two_state.p_err_opt", med2.p_err, mgd::helstrom_error(pair), 1e-7);
    const auto mgd2 = mgd::solve_mgd(pair, {});
    check("two_state.identity", mgd2.objective, med2.p_err + 1.0, 1e-6);

    const auto tail = mgd::fixtures::geometric_tail(30);
    const auto pack = mgd::entropy_pack(tail);
    const double want_h = 13.0 / 4.0 - 0.75 * std::log2(3.0);
    check("diagonal_tail.shannon_H", pack.shannon_H, want_h, 1e-6);
    check("diagonal_tail.holevo_chi", pack.holevo_chi, want_h - 2.0, 1e-6);
    const double g_basis =
        mgd::conditional_guesswork(tail, mgd::fixtures::computational_basis_povm(2)).guesswork;
    check("diagonal_tail.g_given_basis", g_basis, 2.0, 1e-5);
    check("diagonal_tail.entropy_bound_tight", mgd::g_lower_from_entropy(pack.shannon_H - pack.holevo_chi),
          g_basis, 1e-5);

    const auto floor5 = mgd::posterior_entropy_floor(mgd::fixtures::basis_complement(), 10000,
                                                     0x626e64u);
    check_flag("complement.entropy_floor_ok", floor5.ok, true);
    check("complement.min_entropy", std::min(floor5.min_entropy, 2.0), 2.0, 1e-9);

    const auto ident = mgd::fixtures::identical_states();
    check_flag("identical.no_measurement_holds", mgd::check_no_measurement(ident).holds, true);
    check("identical.g_opt_equals_prior", mgd::solve_mgd(ident, {}).objective,
          mgd::guesswork(ident.prior()), 1e-6);

    mgd::HermitianOperator mixed = mgd::HermitianOperator::scaled_identity(2, 0.5);
    check("subentropy.maximally_mixed", mgd::subentropy(mixed), 1.0 - 1.0 / (2.0 * std::log(2.0)),
          1e-12);
    mgd::HermitianOperator skew = mgd::HermitianOperator::zero(2);
    skew.axpy(0.75, mgd::dyad({1.0, 0.0}));
    skew.axpy(0.25, mgd::dyad({0.0, 1.0}));
    check("subentropy.three_quarters", mgd::subentropy(skew), 0.21691718668869925, 1e-12);
    check("subentropy.pure", mgd::subentropy(mgd::dyad({1.0, 0.0})), 0.0, 1e-12);

    rep.results["all_pass"] = all_ok;
    rep.wall_ms = timer.ms();
    emit(rep, as_json);
    return all_ok ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimum-guesswork discrimination of finite quantum-state ensembles"};
    app.require_subcommand(1);

    std::string file, povm_file, theorem5_file, out_path = "recovered_povm.json";
    bool as_json = false, do_certify = false, do_recover = false, do_oracle = false;
    bool no_measurement = false;
    std::optional<double> p_err_opt, p_inc;

    auto* g = app.add_subcommand("guesswork", "expected guesses, prior or given a measurement");
    g->add_option("file", file, "problem file")->required();
    g->add_option("--povm", povm_file, "measurement file (overrides any embedded one)");
    g->add_flag("--json", as_json, "machine-readable output");

    auto* mg = app.add_subcommand("min-guesswork", "optimal expected guesses over measurements");
    mg->add_option("file", file, "problem file")->required();
    mg->add_flag("--certify", do_certify, "recover a measurement and verify its certificate");
    mg->add_flag("--recover", do_recover, "also write the recovered measurement to a file");
    mg->add_option("--out", out_path, "output path for --recover");
    mg->add_flag("--oracle", do_oracle, "cross-check with the direct measurement search");
    mg->add_flag("--json", as_json, "machine-readable output");

    auto* me = app.add_subcommand("min-error", "optimal error probability over measurements");
    me->add_option("file", file, "problem file")->required();
    me->add_flag("--json", as_json, "machine-readable output");

    auto* bd = app.add_subcommand("bounds", "information-theoretic bound suite");
    bd->add_option("file", file, "problem file")->required();
    bd->add_option("--p-err-opt", p_err_opt, "reference optimal error probability");
    bd->add_option("--p-inc", p_inc, "reference inconclusive probability (unambiguous)");
    bd->add_flag("--json", as_json, "machine-readable output");

    auto* ck = app.add_subcommand("check", "structural optimality checks");
    ck->add_option("file", file, "problem file")->required();
    ck->add_flag("--no-measurement", no_measurement,
                 "test whether guessing from the prior alone is already optimal");
    ck->add_option("--theorem5", theorem5_file,
                   "symmetric-measurement optimality input (dim, rho0, group, pi0, V)");
    ck->add_flag("--json", as_json, "machine-readable output");

    auto* rp = app.add_subcommand("repro-paper", "re-derive all published reference numbers");
    rp->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(g)) return cmd_guesswork(file, povm_file, as_json);
        if (app.got_subcommand(mg))
            return cmd_min_guesswork(file, do_certify, do_recover, do_oracle, out_path, as_json);
        if (app.got_subcommand(me)) return cmd_min_error(file, as_json);
        if (app.got_subcommand(bd)) return cmd_bounds(file, p_err_opt, p_inc, as_json);
        if (app.got_subcommand(ck)) return cmd_check(file, no_measurement, theorem5_file, as_json);
        if (app.got_subcommand(rp)) return cmd_repro(as_json);
    } catch (const validation_error& err) {
        std::cerr << "validation error: " << err.what() << '\n';
        return 2;
    } catch (const mgd::solver_error& err) {
        std::cerr << "solver failure: " << err.what() << " (best residual " << err.residual()
                  << ")\n";
        return 3;
    }
    return 0;
}
