#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgd/ensemble.hpp"

namespace mgd {

// All entropies are in bits (base-2 logarithms), with 0 log 0 = 0.

double shannon_entropy(const Distribution& d);
double von_neumann_entropy(const HermitianOperator& rho);

// S(avg) - sum_i p_i S(rho_i), clamped to >= 0.
double holevo_chi(const Ensemble& e);

// Q(rho) = -sum_k [prod_{l != k} lambda_k / (lambda_k - lambda_l)] lambda_k log lambda_k,
// evaluated as a divided difference of lambda^d log lambda so degenerate
// spectra (eigenvalues coalesced within 1e-9) take their analytic limit.
double subentropy(const HermitianOperator& rho);

// Q(avg) - sum_i p_i Q(rho_i).
double lambda_lower(const Ensemble& e);

struct EntropyPack {
    double shannon_H = 0.0;   // H of the prior
    double von_neumann_S = 0.0; // S of the average state
    double holevo_chi = 0.0;
    double subentropy_Q = 0.0; // Q of the average state
    double lambda_lower = 0.0;
};
EntropyPack entropy_pack(const Ensemble& e);

// Closed-form bound values.  Each works for prior, conditional, or optimal
// quantities alike; callers supply the matching inputs.
double g_upper_from_error(int n, double p_err);      // (n/2) p_err + 1
double g_lower_from_error(double p_err);             // 1/(2(1 - p_err)) + 1/2
double g_lower_from_entropy(double h_bits);          // 2^h / 4 + 1; valid when h >= 2
double g_upper_from_entropy(int n, double h_bits);   // (n-1)/(2 log n) h + 1; n >= 2
double unambiguous_upper_bound(int n, double p_inc); // 1 + (n-1)/2 p_inc

// Externally computed quantities some bounds need.
struct ReferenceValues {
    std::optional<double> p_err_opt;
    std::optional<double> g_opt;
    std::optional<double> p_inc; // inconclusive-outcome probability
};

enum class BoundSide { lower, upper };
enum class BoundTarget { prior, optimal }; // what the bound constrains

struct BoundReport {
    std::string name;
    double value = 0.0;
    BoundSide side = BoundSide::lower;
    BoundTarget target = BoundTarget::prior;
    bool precondition_met = true;
    std::string precondition_note;
    // Checked against G(X) for prior bounds, against refs.g_opt for optimal
    // ones; absent when the reference or precondition is missing.
    std::optional<bool> consistent;
};

std::vector<BoundReport> bound_suite(const Ensemble& e, const ReferenceValues& refs = {},
                                     int precondition_samples = 2048,
                                     std::uint64_t seed = 0x626e64u);

// Sampled minimum of the posterior entropy H(X_pi) over rank-one pi: a
// quasi-uniform sphere sample plus simplex descent from the worst points.
// `ok` means no value below 2 bits was seen; sampling cannot prove the
// universal statement, so ok = true is advisory.
struct EntropyFloor {
    bool ok = false;
    double min_entropy = 0.0;
    std::vector<cplx> worst_ket;
};
EntropyFloor posterior_entropy_floor(const Ensemble& e, int samples, std::uint64_t seed);

} // namespace mgd
