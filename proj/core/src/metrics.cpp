#include "superfluence/metrics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "superfluence/errors.hpp"

namespace superfluence {

namespace {

struct OutputPoint {
  cplx a_out;
  double a_number;
  double b_number;
};

OutputPoint output_at(cplx drive, cplx jm, double jpjm, double gamma) {
  const double kappa = std::sqrt(gamma / 2.0);
  OutputPoint p;
  p.a_out = drive - kappa * jm;
  p.a_number = std::norm(drive) - 2.0 * kappa * (std::conj(drive) * jm).real() + 0.5 * gamma * jpjm;
  p.b_number = 0.5 * gamma * jpjm;
  return p;
}

// Trapezoid over the whole record, split at the pulse edge: the [0, t_p]
// segment sees the left-limit drive at t_p, the tail sees the recorded one.
template <class Integrand>
double integrate_split(const TimeSeries& series, cplx drive_left_at_edge, Integrand&& value) {
  const std::size_t edge = series.pulse_end_index;
  const std::size_t last = series.size() - 1;
  const double dt = series.dt;
  double sum = 0.0;
  for (std::size_t k = 0; k <= edge; ++k) {
    const double w = (k == 0 || k == edge) ? 0.5 : 1.0;
    const cplx drive = k == edge ? drive_left_at_edge : series.drive[k];
    sum += w * value(k, drive);
  }
  for (std::size_t k = edge; k <= last && last > edge; ++k) {
    const double w = (k == edge || k == last) ? 0.5 : 1.0;
    sum += w * value(k, series.drive[k]);
  }
  return sum * dt;
}

void require_moments(const TimeSeries& series) {
  if (series.a_out.size() != series.size())
    throw std::logic_error("output_moments has not been applied to this series");
}

}  // namespace

void output_moments(TimeSeries& series, const PulseSpec& pulse, const SystemConfig& config) {
  (void)pulse;
  const std::size_t n = series.size();
  series.a_out.resize(n);
  series.a_out_number.resize(n);
  series.b_out_number.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const OutputPoint p = output_at(series.drive[k], series.jm[k], series.jpjm[k], config.gamma);
    series.a_out[k] = p.a_out;
    series.a_out_number[k] = p.a_number;
    series.b_out_number[k] = p.b_number;
  }
}

PhotonNumbers photon_numbers(const TimeSeries& series, const PulseSpec& pulse,
                             const SystemConfig& config) {
  require_moments(series);
  const cplx edge = envelope_left(pulse, config, pulse.duration);
  const double gamma = config.gamma;
  PhotonNumbers out;
  out.n_in = integrate_split(series, edge, [](std::size_t, cplx d) { return std::norm(d); });
  out.n_a = integrate_split(series, edge, [&](std::size_t k, cplx d) {
    return output_at(d, series.jm[k], series.jpjm[k], gamma).a_number;
  });
  out.n_ac = integrate_split(series, edge, [&](std::size_t k, cplx d) {
    return std::norm(output_at(d, series.jm[k], series.jpjm[k], gamma).a_out);
  });
  out.n_b = integrate_split(series, edge,
                            [&](std::size_t k, cplx) { return 0.5 * gamma * series.jpjm[k]; });
  out.n_bc = integrate_split(series, edge,
                             [&](std::size_t k, cplx) { return 0.5 * gamma * std::norm(series.jm[k]); });
  return out;
}

EmissionProbabilities emission_probabilities(const PhotonNumbers& numbers, const SystemConfig& config) {
  const double n = config.atom_count;
  return {(numbers.n_a - numbers.n_in) / n, (numbers.n_ac - numbers.n_in) / n, numbers.n_b / n};
}

double conservation_residual(const PhotonNumbers& numbers, const SystemConfig& config) {
  return numbers.n_a + numbers.n_b - numbers.n_in - config.atom_count;
}

double ModeFunction::norm() const {
  if (weights.size() < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = (k == 0 || k + 1 == weights.size()) ? 0.5 : 1.0;
    sum += w * weights[k] * weights[k];
  }
  return sum * dt;
}

ModeFunction matched_mode(const PulseSpec& pulse, double dt) {
  const std::size_t steps = steps_in_pulse(pulse, dt);
  ModeFunction f{dt, pulse.duration, std::vector<double>(steps + 1)};
  const double tp = pulse.duration;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    f.weights[k] = pulse.shape == PulseShape::Rectangular
                       ? std::sqrt(1.0 / tp)
                       : std::sqrt(2.0 / tp) * std::sin(kPi * t / tp);
  }
  return f;
}

ModeAmplitudes project_amplitudes(const TimeSeries& series, const ModeFunction& mode,
                                  const PulseSpec& pulse, const SystemConfig& config) {
  require_moments(series);
  const std::size_t edge = mode.weights.size() - 1;
  if (std::abs(series.dt - mode.dt) > 1e-12 * mode.dt || series.size() <= edge ||
      series.pulse_end_index != edge) {
    throw ModeMismatch("mode function grid does not match the evolution grid");
  }
  const double kappa = std::sqrt(config.gamma / 2.0);
  ModeAmplitudes out{};
  for (std::size_t k = 0; k <= edge; ++k) {
    const double w = (k == 0 || k == edge) ? 0.5 : 1.0;
    const cplx drive = k == edge ? envelope_left(pulse, config, pulse.duration) : series.drive[k];
    const double f = w * mode.weights[k];
    out.c_in += f * drive;
    out.c_out += f * (drive - kappa * series.jm[k]);
  }
  out.c_in *= mode.dt;
  out.c_out *= mode.dt;
  return out;
}

QuadratureReport project_mode(const TimeSeries& series, const TwoTimeGrid& correlations,
                              const ModeFunction& mode, const PulseSpec& pulse,
                              const SystemConfig& config) {
  const std::size_t size = mode.weights.size();
  if (correlations.size() < size || std::abs(correlations.dt() - mode.dt) > 1e-12 * mode.dt) {
    std::ostringstream msg;
    msg << "two-time grid (" << correlations.size() << " points, dt " << correlations.dt()
        << ") does not cover the mode support (" << size << " points, dt " << mode.dt << ")";
    throw ModeMismatch(msg.str());
  }

  QuadratureReport out;
  out.amplitudes = project_amplitudes(series, mode, pulse, config);

  std::vector<double> fw(size);
  for (std::size_t k = 0; k < size; ++k)
    fw[k] = ((k == 0 || k + 1 == size) ? 0.5 : 1.0) * mode.dt * mode.weights[k];

  cplx cdc{}, cc{}, cdcd{};
  for (std::size_t i = 0; i < size; ++i) {
    cplx row_pm{}, row_pp{};
    for (std::size_t j = 0; j < size; ++j) {
      row_pm += fw[j] * correlations.pm(i, j);
      row_pp += fw[j] * correlations.pp(i, j);
    }
    cdc += fw[i] * row_pm;
    cdcd += fw[i] * row_pp;
  }
  // mm = conj(pp) pointwise and the mode is real, so <c, c> = conj(<c^dag, c^dag>).
  cc = std::conj(cdcd);
  const double half_gamma = 0.5 * config.gamma;
  out.cdag_c = half_gamma * cdc;
  out.c_c = half_gamma * cc;
  out.cdag_cdag = half_gamma * cdcd;

  const cplx rot = std::polar(1.0, -2.0 * pulse.theta);
  const cplx phase_part = out.c_c * rot + out.cdag_cdag * std::conj(rot);
  const double var_x = (1.0 + 2.0 * out.cdag_c.real() + phase_part.real()) / 4.0;
  const double var_y = (1.0 + 2.0 * out.cdag_c.real() - phase_part.real()) / 4.0;
  out.dx = std::sqrt(std::max(var_x, 0.0));
  out.dy = std::sqrt(std::max(var_y, 0.0));
  return out;
}

GainReport gain_and_snr(const ModeAmplitudes& amplitudes, double theta, std::optional<double> dx) {
  GainReport out;
  if (std::abs(amplitudes.c_in) == 0.0) return out;
  const cplx unrotate = std::polar(1.0, -theta);
  const cplx in = amplitudes.c_in * unrotate;
  const cplx outp = amplitudes.c_out * unrotate;
  auto leak = [](cplx z) { return std::abs(z) > 0.0 ? std::abs(z.imag()) / std::abs(z) : 0.0; };
  if (leak(in) > 1e-3 || leak(outp) > 1e-3) {
    std::ostringstream msg;
    msg << "mode amplitudes are not in phase with the input (relative imaginary parts "
        << leak(in) << ", " << leak(outp) << ")";
    throw PhaseLeak(msg.str());
  }
  out.gain = (outp.real() * outp.real()) / (in.real() * in.real());
  if (dx && *dx > 0.0) out.r_sn = *out.gain / (4.0 * *dx * *dx);
  return out;
}

Simulation simulate(const SystemConfig& config, const PulseSpec& pulse,
                    const SimulationOptions& options) {
  config.validate();
  pulse.validate();
  TimeGrid grid = default_grid(pulse, config, options.refine);
  if (options.dt) grid.dt = *options.dt;

  EvolveOptions evolve_options;
  evolve_options.keep_pulse_states = options.quadratures;

  Simulation sim;
  sim.evolution = evolve(config, pulse, grid, evolve_options);
  TimeSeries& series = sim.evolution.series;
  output_moments(series, pulse, config);

  AmplifierReport& report = sim.report;
  report.numbers = photon_numbers(series, pulse, config);
  report.probabilities = emission_probabilities(report.numbers, config);
  report.conservation_residual = conservation_residual(report.numbers, config);
  report.dt = series.dt;
  report.t_end = series.t.back();
  report.steps = series.size() - 1;

  const ModeFunction mode = matched_mode(pulse, series.dt);
  report.amplitudes = project_amplitudes(series, mode, pulse, config);

  std::optional<double> dx;
  if (options.quadratures) {
    sim.correlations = assemble_two_time(config, pulse, sim.evolution, series.pulse_end_index,
                                         options.threads);
    report.quadratures = project_mode(series, *sim.correlations, mode, pulse, config);
    dx = report.quadratures->dx;
  }
  report.gain = gain_and_snr(report.amplitudes, pulse.theta, dx);
  return sim;
}

}  // namespace superfluence
