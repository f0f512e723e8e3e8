#pragma once

#include <cstddef>
#include <vector>

#include "superfluence/ladder.hpp"
#include "superfluence/model.hpp"

namespace superfluence {

/// Rotating-frame one-point functions s(m, m') = <tau_{m,m'}> on the Dicke
/// ladder at time t. Note s is the transpose of the usual density matrix.
struct CollectiveState {
  double t = 0.0;
  LadderMatrix s;
};

CollectiveState all_excited_state(int atom_count);
CollectiveState ground_state(int atom_count);

cplx expect_Jm(const LadderMatrix& s);
double expect_JpJm(const LadderMatrix& s);
double expect_Jz(const LadderMatrix& s);

inline cplx expect_Jm(const CollectiveState& st) { return expect_Jm(st.s); }
inline double expect_JpJm(const CollectiveState& st) { return expect_JpJm(st.s); }
inline double expect_Jz(const CollectiveState& st) { return expect_Jz(st.s); }

/// Linear generator ds/dt = D(drive) s of the driven, collectively decaying
/// ladder. Six coefficient families: diagonal decay/detuning, the cascade
/// feed from (m+1, m'+1), and four drive couplings to the neighbouring
/// (m-1, m'), (m, m'+1), (m+1, m'), (m, m'-1) entries.
///
/// The drive couplings use the same phase convention as the Heisenberg
/// equations d<J_->/dt = ... - sqrt(2 gamma) E <J_z> and the input-output
/// relation a_out = a_in - sqrt(gamma/2) J_-.
class Generator {
public:
  explicit Generator(const SystemConfig& config);

  int atom_count() const noexcept { return atoms_; }

  /// out = D(drive) s. out must already have the right dimension.
  void apply(const LadderMatrix& s, cplx drive, LadderMatrix& out) const;

private:
  int atoms_;
  double gamma_;
  double detuning_;
  double drive_coupling_;          // sqrt(gamma / 2)
  std::vector<double> lowering_;   // sqrt(m (N - m + 1))
  std::vector<double> half_decay_; // gamma m (N - m + 1) / 2
};

LadderMatrix apply_generator(const CollectiveState& state, cplx drive, const SystemConfig& config);

/// Classic fixed-step RK4 on a ladder matrix. Drive values for the stages
/// are taken with envelope_in_step, so steps never straddle a pulse edge.
class Rk4Stepper {
public:
  Rk4Stepper(const SystemConfig& config, const PulseSpec& pulse);

  void step(LadderMatrix& s, double t, double dt);

  const Generator& generator() const noexcept { return generator_; }

private:
  SystemConfig config_;
  PulseSpec pulse_;
  Generator generator_;
  LadderMatrix k1_, k2_, k3_, k4_, probe_;
};

struct TimeGrid {
  double dt = 1e-3;
  double t_end = 1.0;  ///< minimum end time; evolve may extend it
};

/// Step that resolves the Rabi dynamics: t_p / K with K >= 2000 and
/// dt <= 0.002 / gamma, divided further by refine. t_end = t_p.
TimeGrid default_grid(const PulseSpec& pulse, const SystemConfig& config, int refine = 1);

/// Uniform-grid record of one evolution. Output-field channels are empty
/// until metrics::output_moments fills them.
struct TimeSeries {
  double dt = 0.0;
  std::size_t pulse_end_index = 0;  ///< index k with t_k == t_p

  std::vector<double> t;
  std::vector<cplx> drive;  ///< envelope(t_k), half-open support
  std::vector<cplx> jm;     ///< <J_->
  std::vector<double> jz;   ///< <J_z>
  std::vector<double> jpjm; ///< <J_+ J_->

  std::vector<cplx> a_out;          ///< <a_out>
  std::vector<double> a_out_number; ///< <a_out^dag a_out>
  std::vector<double> b_out_number; ///< <b_out^dag b_out>

  std::size_t size() const noexcept { return t.size(); }
};

struct EvolveOptions {
  bool keep_pulse_states = false;  ///< store s(t_k) for t_k in [0, t_p]
  double tail_cap = 50.0;          ///< stop at t_p + tail_cap / gamma at the latest
  double residual_tolerance = 1e-6;///< stop once <J_z> + N/2 < tolerance * N
  double trace_tolerance = 1e-4;   ///< StepTooLarge threshold
};

struct Evolution {
  TimeSeries series;
  CollectiveState final_state;
  std::vector<LadderMatrix> pulse_states;  ///< only with keep_pulse_states
};

/// Integrates from the fully inverted ladder state |N><N| at t = 0.
/// Throws StepTooLarge when the trace drifts or the diagonal leaves [0, 1].
Evolution evolve(const SystemConfig& config, const PulseSpec& pulse, const TimeGrid& grid,
                 const EvolveOptions& options = {});

/// Number of whole steps of size dt in t_p; throws if t_p is not on the grid.
std::size_t steps_in_pulse(const PulseSpec& pulse, double dt);

/// Checks the physical-state invariants of s; returns false if any fails.
bool plausible_state(const LadderMatrix& s, double trace_tolerance);

}  // namespace superfluence
