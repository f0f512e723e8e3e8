#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "superfluence/dicke.hpp"
#include "superfluence/model.hpp"
#include "superfluence/regression.hpp"

namespace superfluence {

// Output-field observables. With a coherent input in the forward port and
// vacuum in the backward port,
//   a_out = a_in - sqrt(gamma/2) J_-,  b_out = b_in - sqrt(gamma/2) J_-,
// and a_in acting on the initial state returns the envelope. All time
// integrals are trapezoidal on the evolution grid, split at t_p so the
// rectangular edge is integrated with its left limit.

/// Fills a_out, a_out_number and b_out_number in place.
void output_moments(TimeSeries& series, const PulseSpec& pulse, const SystemConfig& config);

struct PhotonNumbers {
  double n_in = 0.0;
  double n_a = 0.0;
  double n_ac = 0.0;  ///< coherent part of n_a
  double n_b = 0.0;
  double n_bc = 0.0;  ///< coherent part of n_b
};

/// Requires output_moments to have run on the series.
PhotonNumbers photon_numbers(const TimeSeries& series, const PulseSpec& pulse,
                             const SystemConfig& config);

/// Per-atom photon surplus. P_a and P_ac may be negative.
struct EmissionProbabilities {
  double p_a = 0.0;
  double p_ac = 0.0;
  double p_b = 0.0;
};

EmissionProbabilities emission_probabilities(const PhotonNumbers& numbers, const SystemConfig& config);

/// N_a + N_b - N_in - N.
double conservation_residual(const PhotonNumbers& numbers, const SystemConfig& config);

/// Normalised temporal mode on grid points t_k = k dt, k = 0..K with
/// K dt = t_p. The mode matches the input envelope (constant for the
/// rectangular pulse, half-period sine otherwise) and is real in the
/// rotating frame. The value at t_p is the left limit.
struct ModeFunction {
  double dt = 0.0;
  double duration = 0.0;
  std::vector<double> weights;

  /// trapezoidal integral of |f|^2
  double norm() const;
};

ModeFunction matched_mode(const PulseSpec& pulse, double dt);

struct ModeAmplitudes {
  cplx c_in;   ///< integral of f * envelope
  cplx c_out;  ///< integral of f * <a_out>
};

/// Requires output_moments. Throws ModeMismatch if the series grid differs
/// from the mode grid or does not reach t_p.
ModeAmplitudes project_amplitudes(const TimeSeries& series, const ModeFunction& mode,
                                  const PulseSpec& pulse, const SystemConfig& config);

struct QuadratureReport {
  ModeAmplitudes amplitudes;
  cplx cdag_c;     ///< <c^dag, c>
  cplx c_c;        ///< <c, c>
  cplx cdag_cdag;  ///< <c^dag, c^dag>
  double dx = 0.5;
  double dy = 0.5;
};

/// Mode-projected amplitudes and connected second moments of the output
/// pulse, then quadrature standard deviations relative to the input phase.
/// Throws ModeMismatch if the two-time grid does not cover the mode.
QuadratureReport project_mode(const TimeSeries& series, const TwoTimeGrid& correlations,
                              const ModeFunction& mode, const PulseSpec& pulse,
                              const SystemConfig& config);

struct GainReport {
  std::optional<double> gain;  ///< undefined without input
  std::optional<double> r_sn;  ///< needs gain and dx
};

/// G = <c_out>^2 / <c_in>^2 after removing the input phase; R_SN = G / (4 dX^2).
/// Throws PhaseLeak if a rotated amplitude keeps a relative imaginary part
/// above 1e-3.
GainReport gain_and_snr(const ModeAmplitudes& amplitudes, double theta,
                        std::optional<double> dx = std::nullopt);

struct AmplifierReport {
  PhotonNumbers numbers;
  EmissionProbabilities probabilities;
  double conservation_residual = 0.0;
  ModeAmplitudes amplitudes;
  GainReport gain;
  std::optional<QuadratureReport> quadratures;
  double dt = 0.0;
  double t_end = 0.0;
  std::size_t steps = 0;
};

struct SimulationOptions {
  std::optional<double> dt;  ///< default: default_grid(pulse, config, refine)
  int refine = 1;
  bool quadratures = false;
  unsigned threads = 0;
};

struct Simulation {
  Evolution evolution;
  std::optional<TwoTimeGrid> correlations;
  AmplifierReport report;
};

/// Evolution, output moments, photon numbers, probabilities, gain and,
/// on request, the two-time quadrature analysis for one parameter point.
Simulation simulate(const SystemConfig& config, const PulseSpec& pulse,
                    const SimulationOptions& options = {});

}  // namespace superfluence
