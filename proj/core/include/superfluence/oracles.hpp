#pragma once

#include <cstddef>
#include <vector>

#include "superfluence/model.hpp"

namespace superfluence::oracles {

// Closed-form and independently computed references. Nothing here shares
// code with the ladder integrator.

/// Undamped resonant rectangular pi pulse: the collective Bloch vector
/// rotates from the north to the south pole during [0, pi / Omega].
struct ShortPulseSolution {
  int atom_count = 1;
  double gamma = 1.0;
  double rabi = 0.0;   ///< Omega = pi / t_p
  double theta = 0.0;

  cplx jm(double t) const;      ///< -(N/2) sin(Omega t) e^{i theta}
  double jz(double t) const;    ///< (N/2) cos(Omega t)
  cplx a_out(double t) const;   ///< [Omega/sqrt(2 gamma) + N sqrt(gamma/8) sin(Omega t)] e^{i theta}

  double n_in() const;          ///< pi^2 / (2 gamma t_p)
  double n_ac_limit() const;    ///< N_in + N
  double n_a_limit() const;     ///< N_in + N
  double n_b_limit() const;     ///< 0
  /// (1 + N gamma t_p / pi^2)^2, whose first order is 1 + 2 N gamma t_p / pi^2.
  double gain() const;
};

/// Requires a rectangular pulse of area pi.
ShortPulseSolution short_pulse_reference(const SystemConfig& config, const PulseSpec& pulse);

struct LongPulseProbabilities {
  double p_a = 0.0;
  double p_b = 0.0;
  double p_ac = 0.0;
};

/// Superradiant burst first, then coherent reflection of the whole pulse.
/// Requires a rectangular pulse of area pi.
LongPulseProbabilities long_pulse_reference(const SystemConfig& config, const PulseSpec& pulse);

/// |<a>|^2 of the normalised N-photon-added coherent state (a^dag)^N |sqrt(n_in)>
/// from the closed-form coefficient sums (log-gamma arithmetic).
double pacs_coherent_number(double n_in, int added);

/// Same quantity by summing the Fock expansion directly.
double pacs_coherent_number_fock(double n_in, int added);

/// Coherent-state Fock truncation used by the single-mode oracles:
/// nbar + 10 sqrt(nbar), plus a small floor.
std::size_t fock_cutoff(double nbar);

/// Jaynes-Cummings atom+coherent field, atom initially excited; the field
/// state conditioned on the atom having decayed.
struct JcConditionalState {
  double decay_probability = 0.0;   ///< squared norm of the conditional state
  std::vector<cplx> exact;          ///< Fock amplitudes, index = photon number
  std::vector<cplx> two_branch;     ///< two displaced coherent states, phases +- g t / (2 sqrt(nbar))
  double overlap = 0.0;             ///< |<exact|two_branch>| / (|exact| |two_branch|)
};

JcConditionalState jc_conditional_state(double nbar, double g, double t, std::size_t cutoff = 0);

/// t_pi = pi / (2 g sqrt(nbar))
double jc_pi_time(double nbar, double g);

struct PhotonAdderResult {
  cplx amplitude;        ///< <a>
  double number = 0.0;   ///< <a^dag a>
};

/// Moments of V^dag |sqrt(nbar) e^{i phi}> with V^dag = sum |n+1><n|.
PhotonAdderResult photon_adder_check(double nbar, double phi, std::size_t cutoff = 0);

/// Factorised mean-field dynamics of H = g (a J_+ + J_- a^dag) starting from
/// a real coherent amplitude sqrt(nbar) and the J_x eigenstate |m>_x.
struct SemiclassicalParams {
  double m = 0.5;
  double nbar = 100.0;
  double g = 1.0;
};

struct SemiclassicalTrajectory {
  SemiclassicalParams params;
  double s = 0.0;        ///< Bloch length |m|
  double n_total = 0.0;  ///< r^2 + s sin(eta)
  std::vector<double> t, r, phi, zeta, eta;
};

/// RK4 on (phi, zeta, eta) with r eliminated through r^2 = N_tot - s sin(eta).
/// Throws SingularAmplitude if r^2 <= 0.
SemiclassicalTrajectory semiclassical_evolve(const SemiclassicalParams& params, double dt,
                                             std::size_t steps);

struct MeanFieldPoint {
  cplx a;
  cplx jm;
  double jz = 0.0;
};

/// RK4 on the Cartesian mean-field equations for <a>, <J_->, <J_z>.
std::vector<MeanFieldPoint> meanfield_evolve(const SemiclassicalParams& params, double dt,
                                             std::size_t steps);

/// Largest relative drift of s and N_tot along meanfield_evolve.
double meanfield_invariant_drift(const SemiclassicalParams& params, double dt, std::size_t steps);

struct LinearizedPhase {
  double phi = 0.0;  ///< -g m t / sqrt(nbar)
  double eta = 0.0;  ///< -(m / nbar) sin^2(g sqrt(nbar) t)
};

LinearizedPhase linearized_reference(double m, double nbar, double g, double t);

struct PhaseSpread {
  double delta_phi = 0.0;  ///< sqrt(N) pi / (4 N_in)
  double delta_y = 0.0;    ///< sqrt(1/4 + N pi^2 G / (16 N_in))
};

/// Single-mode estimate of the phase-quadrature noise added by a pi pulse.
PhaseSpread phase_spread_estimate(int atom_count, double n_in, double gain);

/// <sigma_+(t1) sigma_-(t2)> for one initially excited atom, no drive,
/// rotating frame: exp(-gamma t1) exp(-gamma (t2 - t1) / 2).
double single_atom_regression(double t1, double t2, double gamma);

/// One atom, initially excited, driven by a rectangular pulse, with the
/// forward emission chopped into `bins` time bins. Each bin is merged into an
/// accumulator mode by a beam splitter so that the accumulator ends up in the
/// flat mode over [0, t_p]; the backward channel is an amplitude-damping map.
/// Reports connected moments of the scattered part of that mode.
struct TimeBinMoments {
  cplx scattered;      ///< <c> without the coherent input
  double cdag_c = 0.0;
  cplx c_c;
  double dx = 0.5;     ///< quadratures for theta = 0
  double dy = 0.5;
  double truncation = 0.0;  ///< population of the top accumulator level
};

TimeBinMoments time_bin_single_atom(double gamma, double duration, double area, std::size_t bins,
                                    std::size_t cutoff = 6);

}  // namespace superfluence::oracles
