#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mgd/ensemble.hpp"
#include "mgd/guesswork.hpp"
#include "mgd/hermitian.hpp"

namespace mgd {

// Interior-point options shared by the guesswork and min-error programs.
struct SolverOptions {
    double tol = 1e-7;         // target accuracy of the optimal value
    int max_newton_steps = 200; // per centering
    double mu_factor = 0.25;
    int enumeration_cap = 6;   // largest n solved with all n! constraints up front
    double mu_init = 1.0;
    double mu_min = 1e-10;     // one final centering runs just below this
    double newton_grad_tol = 1e-10;
};

// One centering on the barrier path.
struct IterationRecord {
    int outer = 0;
    double mu = 0.0;
    double objective = 0.0; // Tr(A) at the end of the centering
    double min_slack = 0.0; // min over working constraints of lambda_min(target - A)
    int newton_steps = 0;
};

// Result of the guesswork program: maximize Tr(A) subject to A <= R_sigma for
// every query order sigma, where R_sigma = sum_i sigma(i) p_i rho_i.
struct MgdSolution {
    HermitianOperator a;
    double objective = 0.0;
    std::vector<std::vector<int>> active_set; // sigma with lambda_min(R_sigma - A) <= 1e-6
    int iterations = 0;                       // damped-Newton steps, all centerings
    double duality_gap_estimate = 0.0;
    bool converged = false;
    bool exhaustive = false;  // all n! constraints were in the working set
    bool audited = false;     // post-solve feasibility swept every sigma (n <= 6)
    double audit_min_slack = 0.0; // worst lambda_min(R_sigma - A) seen by the sweep
    std::vector<IterationRecord> path;
};

// Result of the min-error program: minimize Tr(Y) subject to Y >= p_i rho_i;
// the optimal Tr(Y) is the best success probability.
struct MedSolution {
    HermitianOperator y;
    double p_err = 0.0;
    double success_prob = 0.0;
    std::vector<int> active_states; // i with lambda_min(Y - p_i rho_i) <= 1e-6
    int iterations = 0;
    double duality_gap_estimate = 0.0;
    bool converged = false;
    std::vector<IterationRecord> path;
};

// Optimality certificate for a measurement: with sigma_j the best query order
// given outcome j, Gamma = sum_j R_{sigma_j} pi_j must satisfy Gamma <= R_sigma
// for every sigma.  worst_violation is min_sigma lambda_min(R_sigma - Gamma_h)
// over all n! orders when exhaustive, else over a heuristic family (finding a
// violation is then conclusive, not finding one is not).
struct Certificate {
    HermitianOperator gamma; // symmetrized
    double hermiticity_residual = 0.0;
    double worst_violation = 0.0;
    bool exhaustive = false;

    bool passed() const { return hermiticity_residual <= 1e-7 && worst_violation >= -1e-7; }
};

struct PovmRecovery {
    bool ok = false;
    std::optional<Povm> povm;
    std::string failure_reason;
    double value = 0.0; // achieved guesswork when ok
};

// sum_i rank[i] p_i rho_i for a query order given as 1-based positions.
HermitianOperator strategy_operator(const Ensemble& e, const std::vector<int>& rank);

// n <= opts.enumeration_cap enumerates all n! constraints; larger n (hard cap
// 8) runs a working-set loop with rank-one separation.  Audit over all n!
// orders runs post-solve whenever n <= 6.
MgdSolution solve_mgd(const Ensemble& e, const SolverOptions& opts = {});

MedSolution solve_med(const Ensemble& e, const SolverOptions& opts = {});

// Closed form for n = 2: (1 - ||p_0 rho_0 - p_1 rho_1||_1) / 2.
double helstrom_error(const Ensemble& e);

Certificate certify(const Ensemble& e, const Povm& m);

// Builds a measurement from the near-kernels of the active slacks and checks
// it: success requires certify() to pass and the achieved guesswork to match
// sol.objective within 1e-5.  Requires sol.duality_gap_estimate <= 1e-6.
PovmRecovery recover_povm(const Ensemble& e, const MgdSolution& sol);

} // namespace mgd
