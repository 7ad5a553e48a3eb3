#pragma once

#include "mgd/ensemble.hpp"
#include "mgd/geo_uniform.hpp"

// Bundled reference problems used by the CLI fixtures, the tests, and the
// reproduction command.
namespace mgd::fixtures {

// Three equiprobable pure qubit states whose Bloch vectors are spaced by
// 120 degrees in a plane (rays 0, 60, 120 degrees).
Ensemble trine();

// The trine as a group orbit: seed |0><0| under the planar order-3 rotation
// group {R_y(0), R_y(4pi/3), R_y(8pi/3)}.
GeoUniformSpec trine_spec();

// Pretty-good measurement for the trine: elements (2/3)|psi_k><psi_k|.
Povm trine_povm_e();

// The same orbit rotated by R_y(pi/6); minimizes expected guesses.
Povm trine_povm_g();

// Seed element of both trine measurements, (2/3)|0><0|.
HermitianOperator trine_pi0();

// The rotation taking the first measurement into the second.
ComplexMatrix trine_optimal_rotation();

// Five states on C^5: rho_i = (I - |i><i|)/4, uniform prior.  Every
// measurement outcome leaves at least two bits of label entropy.
Ensemble basis_complement();

// Qubit ensemble with prior (3/8, 3/8, 2^-3, ..., 2^-terms) and states
// diag(2/3,1/3), diag(1/3,2/3), then maximally mixed; measuring in the
// computational basis leaves a geometric posterior, so the expected number
// of guesses is 2 and the entropy bound is tight.
Ensemble geometric_tail(int terms = 30);

// Projectors onto the standard basis.
Povm computational_basis_povm(int d);

// Equiprobable |0> and |+>: the textbook two-state discrimination pair.
Ensemble helstrom_pair();

// Two copies of the same mixed state with a skewed prior; no measurement
// can beat guessing from the prior alone.
Ensemble identical_states();

} // namespace mgd::fixtures
