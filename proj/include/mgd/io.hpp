#pragma once

#include <optional>
#include <string>

#include "mgd/ensemble.hpp"
#include "mgd/geo_uniform.hpp"

namespace mgd {

// On-disk problem description (UTF-8 JSON).  Top-level object:
//   "dim":    int
//   "states": [ { "p": real, "rho": [[ [re, im], ... ]] } ]   (row-major)
//   "povm":   [ [[ [re, im], ... ]] ]                          (optional)
// or, instead of "states", a group presentation that the loader expands:
//   "group":  [ [[ [re, im], ... ]] ],  "rho0": [[ [re, im], ... ]]
// Exactly one of "states" / "group" must be present.  Every invariant is
// enforced on load; the first violation is reported with its indices.
struct ProblemFile {
    Ensemble ensemble;
    std::optional<Povm> povm;
    std::optional<GeoUniformSpec> group_spec; // set when the file used "group"
};

ProblemFile load_problem(const std::string& path);

// Reads only the "povm" key (plus "dim") from a problem file.
Povm load_povm(const std::string& path);

// Input for the covariant-optimality check: "dim", "rho0" (seed state),
// "group" (unitaries), "pi0" (seed POVM element), "V" (trial rotation).
struct OptimalityFile {
    GeoUniformSpec spec;
    HermitianOperator pi0;
    ComplexMatrix v;
};

OptimalityFile load_optimality_check(const std::string& path);

// Writers used by the fixture generator and --recover.  Keys come out
// sorted, numbers round-trip exactly.
void save_problem(const std::string& path, const Ensemble& e, const Povm* povm = nullptr);
void save_povm(const std::string& path, const Povm& povm);

} // namespace mgd
