#pragma once

#include <complex>
#include <string_view>

namespace superfluence {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Atoms and their coupling to the waveguide. Everything runs in the frame
/// rotating at the pulse carrier, so only the detuning enters the dynamics.
struct SystemConfig {
  int atom_count = 1;
  double gamma = 1.0;     ///< total decay rate into the waveguide (both directions)
  double detuning = 0.0;  ///< atomic transition minus carrier, in the same units as gamma

  void validate() const;
};

enum class PulseShape { Rectangular, Sine };

std::string_view to_string(PulseShape shape);
PulseShape parse_pulse_shape(std::string_view name);

/// Coherent input pulse. The envelope is supported on the half-open
/// interval [0, duration).
struct PulseSpec {
  PulseShape shape = PulseShape::Rectangular;
  double duration = 1.0;  ///< t_p
  double area = kPi;      ///< sqrt(2 gamma) |integral of envelope|, radians
  double theta = 0.0;     ///< carrier phase

  void validate() const;
};

/// Slowly varying drive amplitude at time t (zero outside [0, duration)).
cplx envelope(const PulseSpec& pulse, const SystemConfig& config, double t);

/// Envelope as seen by an integrator stage at time t inside the step whose
/// midpoint is step_mid. Support membership is decided by the midpoint, so a
/// step that ends exactly on the pulse edge sees the left limit.
cplx envelope_in_step(const PulseSpec& pulse, const SystemConfig& config, double t,
                      double step_mid);

/// Left limit of the envelope at t. Equal to envelope(t) except at the
/// trailing edge of a rectangular pulse.
cplx envelope_left(const PulseSpec& pulse, const SystemConfig& config, double t);

/// Peak amplitude of the envelope (rectangular height or sine maximum).
double peak_amplitude(const PulseSpec& pulse, const SystemConfig& config);

/// Closed-form integral of |envelope|^2.
double mean_input_photons(const PulseSpec& pulse, const SystemConfig& config);

/// Numerical quadrature of sqrt(2 gamma) |integral of envelope dt|.
double pulse_area_check(const PulseSpec& pulse, const SystemConfig& config);

/// Duration that puts n_in photons into a pulse of the given shape and area.
double duration_for_photons(PulseShape shape, double area, double n_in, double gamma);

}  // namespace superfluence
