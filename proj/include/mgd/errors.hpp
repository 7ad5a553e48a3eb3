#pragma once

#include <stdexcept>
#include <string>

namespace mgd {

// Input data violates a documented invariant (malformed file, bad dimension,
// probabilities that do not sum to one, non-PSD state, ...).
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative procedure failed to converge within its budget.  Carries the
// residual reached so callers can report how far off the result is.
class solver_error : public std::runtime_error {
  public:
    solver_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

// A measurement outcome with (numerically) zero weight: the posterior
// distribution conditioned on it is undefined.
class degenerate_outcome : public std::runtime_error {
  public:
    explicit degenerate_outcome(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mgd
