#pragma once

#include <optional>
#include <vector>

#include "mgd/ensemble.hpp"

namespace mgd {

// Finite group of unitaries, validated numerically: each element unitary to
// 1e-10; identity and inverses present and products closed to 1e-8.
class UnitaryGroup {
  public:
    UnitaryGroup() = default;
    static UnitaryGroup create(std::vector<ComplexMatrix> elements);

    int size() const noexcept { return static_cast<int>(u_.size()); }
    int dim() const noexcept { return u_.empty() ? 0 : u_[0].dim(); }
    const ComplexMatrix& element(int i) const { return u_[static_cast<size_t>(i)]; }
    const std::vector<ComplexMatrix>& elements() const noexcept { return u_; }

  private:
    std::vector<ComplexMatrix> u_;
};

// Symmetric ensemble recipe: states U_i rho0 U_i^dag with uniform prior.
struct GeoUniformSpec {
    HermitianOperator rho0;
    UnitaryGroup group;
};

Ensemble generate_ensemble(const GeoUniformSpec& spec);

// pi_j = U_j pi0 U_j^dag; the elements must sum to the identity within 1e-8.
Povm generate_povm(const HermitianOperator& pi0, const UnitaryGroup& group);

// [[cos t/2, -sin t/2], [sin t/2, cos t/2]].  Any angle is accepted; note the
// matrix has period 4*pi (theta + 2*pi flips the sign).
ComplexMatrix rotation_y(double theta);

// Guesswork of the posterior after a single rank-one outcome along `ket`
// (scale of the ket is irrelevant).
double rank_one_guesswork(const Ensemble& e, const std::vector<cplx>& ket);

// Minimum of rank_one_guesswork over unit kets.  Qubits use the exhaustive
// (alpha, beta) parameterization ket = (cos a, e^{ib} sin a) on a 720x720
// grid plus simplex refinement; higher dimensions fall back to sampling and
// are flagged heuristic.
struct RankOneMin {
    double value = 0.0;
    std::vector<cplx> ket;
    std::optional<double> alpha; // qubit parameterization of the argmin
    std::optional<double> beta;
    bool heuristic = false;
    long evaluations = 0;
};
RankOneMin minimize_rank_one(const Ensemble& e);

// Sufficiency check for a symmetric measurement built from pi0 and an
// intertwiner V: if V commutes with the whole group and the outcome
// V pi0 V^dag attains the rank-one minimum, the measurement
// {V U_j pi0 U_j^dag V^dag} achieves the optimal guesswork.
struct GeoOptimality {
    bool commutes = false;
    double rank_one_min = 0.0;
    double candidate_value = 0.0; // guesswork after the V pi0 V^dag outcome
    bool optimal = false;         // advisory only when heuristic is set
    double povm_value = 0.0;      // guesswork of the full symmetric measurement
    bool heuristic = false;
};
GeoOptimality check_geo_uniform_optimality(const Ensemble& e, const GeoUniformSpec& spec,
                                           const HermitianOperator& pi0,
                                           const ComplexMatrix& v);

} // namespace mgd
