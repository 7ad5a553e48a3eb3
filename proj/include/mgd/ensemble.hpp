#pragma once

#include <cstdint>
#include <vector>

#include "mgd/hermitian.hpp"
#include "mgd/rng.hpp"

namespace mgd {

// Finite probability distribution.  Invariants: every entry nonnegative
// (inputs down to -1e-10 are clamped to zero), total mass 1 within 1e-9.
class Distribution {
  public:
    Distribution() = default;
    static Distribution create(std::vector<double> p);

    int size() const noexcept { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[static_cast<size_t>(i)]; }
    const std::vector<double>& values() const noexcept { return p_; }

  private:
    std::vector<double> p_;
};

// Finite ensemble of quantum states: states rho_i with prior probabilities
// p_i.  Invariants: common dimension; each rho_i PSD (tol 1e-9) with unit
// trace (tol 1e-9); prior a valid Distribution.  Zero-probability states
// are permitted.
class Ensemble {
  public:
    Ensemble() = default;
    static Ensemble create(std::vector<double> probs, std::vector<HermitianOperator> states);

    int dim() const noexcept { return states_.empty() ? 0 : states_[0].dim(); }
    int size() const noexcept { return static_cast<int>(states_.size()); }
    double prob(int i) const { return prior_[i]; }
    const Distribution& prior() const noexcept { return prior_; }
    const HermitianOperator& state(int i) const { return states_[static_cast<size_t>(i)]; }
    const std::vector<HermitianOperator>& states() const noexcept { return states_; }

    // sum_i p_i rho_i
    HermitianOperator average_state() const;

  private:
    Distribution prior_;
    std::vector<HermitianOperator> states_;
};

// Positive operator-valued measure: elements PSD (tol 1e-9), summing to the
// identity (completeness_tol, default 1e-9, measured in Frobenius norm).
class Povm {
  public:
    Povm() = default;
    static Povm create(std::vector<HermitianOperator> ops, double completeness_tol = 1e-9);

    int dim() const noexcept { return ops_.empty() ? 0 : ops_[0].dim(); }
    int size() const noexcept { return static_cast<int>(ops_.size()); }
    const HermitianOperator& op(int j) const { return ops_[static_cast<size_t>(j)]; }
    const std::vector<HermitianOperator>& ops() const noexcept { return ops_; }

  private:
    std::vector<HermitianOperator> ops_;
};

// Classical channel induced by measuring the ensemble: row i, column j holds
// p(y_j | x_i) = Tr(rho_i pi_j), clamped into [0, 1]; each row sums to 1
// within 1e-8 (checked).
std::vector<std::vector<double>> channel(const Ensemble& e, const Povm& m);

// Posterior of the ensemble label conditioned on seeing outcome pi:
//   Pr(x_i) = p_i Tr(rho_i pi) / sum_k p_k Tr(rho_k pi).
// `weight` is the denominator.  Outcomes whose relative weight is below
// 1e-14 raise degenerate_outcome.
struct PosteriorResult {
    Distribution dist;
    double weight;
};
PosteriorResult posterior(const Ensemble& e, const HermitianOperator& pi);

// Deterministic generators for property tests and searches.
Ensemble random_ensemble(int dim, int n, std::uint64_t seed);
Povm random_povm(int dim, int m, std::uint64_t seed);
HermitianOperator random_density(int dim, Rng& rng);

} // namespace mgd
