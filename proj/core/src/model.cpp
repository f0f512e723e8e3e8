#include "superfluence/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace superfluence {

void SystemConfig::validate() const {
  if (atom_count < 1) throw std::invalid_argument("atom_count must be >= 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be > 0");
  if (!std::isfinite(detuning)) throw std::invalid_argument("detuning must be finite");
}

void PulseSpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw std::invalid_argument("pulse duration must be > 0");
  if (!(area >= 0.0) || !std::isfinite(area)) throw std::invalid_argument("pulse area must be >= 0");
  if (!std::isfinite(theta)) throw std::invalid_argument("pulse phase must be finite");
}

std::string_view to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::Rectangular:
      return "rect";
    case PulseShape::Sine:
      return "sine";
  }
  return "unknown";
}

PulseShape parse_pulse_shape(std::string_view name) {
  if (name == "rect" || name == "rectangular") return PulseShape::Rectangular;
  if (name == "sine" || name == "sin") return PulseShape::Sine;
  throw std::invalid_argument("unknown pulse shape '" + std::string(name) + "'");
}

double peak_amplitude(const PulseSpec& pulse, const SystemConfig& config) {
  const double root = std::sqrt(2.0 * config.gamma);
  switch (pulse.shape) {
    case PulseShape::Rectangular:
      // Rabi frequency A / t_p over sqrt(2 gamma)
      return pulse.area / pulse.duration / root;
    case PulseShape::Sine:
      return pulse.area * kPi / (2.0 * pulse.duration * root);
  }
  return 0.0;
}

namespace {

cplx shape_value(const PulseSpec& pulse, const SystemConfig& config, double t) {
  const double peak = peak_amplitude(pulse, config);
  const double profile =
      pulse.shape == PulseShape::Rectangular ? 1.0 : std::sin(kPi * t / pulse.duration);
  return std::polar(peak * profile, pulse.theta);
}

bool in_support(const PulseSpec& pulse, double t) { return t >= 0.0 && t < pulse.duration; }

}  // namespace

cplx envelope(const PulseSpec& pulse, const SystemConfig& config, double t) {
  if (!in_support(pulse, t)) return {};
  return shape_value(pulse, config, t);
}

cplx envelope_in_step(const PulseSpec& pulse, const SystemConfig& config, double t,
                      double step_mid) {
  if (!in_support(pulse, step_mid)) return {};
  return shape_value(pulse, config, t);
}

cplx envelope_left(const PulseSpec& pulse, const SystemConfig& config, double t) {
  if (t > 0.0 && t <= pulse.duration) return shape_value(pulse, config, t);
  return envelope(pulse, config, t);
}

double mean_input_photons(const PulseSpec& pulse, const SystemConfig& config) {
  const double a2 = pulse.area * pulse.area;
  switch (pulse.shape) {
    case PulseShape::Rectangular:
      return a2 / (2.0 * config.gamma * pulse.duration);
    case PulseShape::Sine:
      return a2 * kPi * kPi / (16.0 * config.gamma * pulse.duration);
  }
  return 0.0;
}

double pulse_area_check(const PulseSpec& pulse, const SystemConfig& config) {
  // Composite Simpson on the closed support; the trailing edge uses the left limit.
  constexpr int panels = 4096;
  const double h = pulse.duration / panels;
  cplx sum = envelope_left(pulse, config, 0.0) + envelope_left(pulse, config, pulse.duration);
  for (int k = 1; k < panels; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * envelope(pulse, config, k * h);
  }
  return std::sqrt(2.0 * config.gamma) * std::abs(sum * (h / 3.0));
}

double duration_for_photons(PulseShape shape, double area, double n_in, double gamma) {
  if (!(n_in > 0.0)) throw std::invalid_argument("input photon number must be > 0");
  const double a2 = area * area;
  switch (shape) {
    case PulseShape::Rectangular:
      return a2 / (2.0 * gamma * n_in);
    case PulseShape::Sine:
      return a2 * kPi * kPi / (16.0 * gamma * n_in);
  }
  return 0.0;
}

}  // namespace superfluence
