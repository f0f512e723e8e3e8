#pragma once

#include <stdexcept>
#include <string>

namespace superfluence {

// Raised when a fixed-step integration loses probability or leaves the
// physical range; the caller is expected to retry with a smaller step.
class StepTooLarge : public std::runtime_error {
public:
  StepTooLarge(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  double time() const noexcept { return time_; }

private:
  double time_;
};

// The mode function's support is not covered by the two-time grid.
class ModeMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Rotated mode amplitudes were expected to be real but are not.
class PhaseLeak : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The semiclassical amplitude r^2 = N_tot - s sin(eta) reached zero.
class SingularAmplitude : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace superfluence
