#include "superfluence/dicke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "superfluence/errors.hpp"

namespace superfluence {

CollectiveState all_excited_state(int atom_count) {
  CollectiveState st{0.0, LadderMatrix(atom_count)};
  st.s(atom_count, atom_count) = 1.0;
  return st;
}

CollectiveState ground_state(int atom_count) {
  CollectiveState st{0.0, LadderMatrix(atom_count)};
  st.s(0, 0) = 1.0;
  return st;
}

cplx expect_Jm(const LadderMatrix& s) {
  const int n = s.atom_count();
  cplx sum{};
  for (int m = 1; m <= n; ++m) sum += std::sqrt(ladder_weight(n, m)) * s(m - 1, m);
  return sum;
}

double expect_JpJm(const LadderMatrix& s) {
  const int n = s.atom_count();
  double sum = 0.0;
  for (int m = 1; m <= n; ++m) sum += ladder_weight(n, m) * s(m, m).real();
  return sum;
}

double expect_Jz(const LadderMatrix& s) {
  const int n = s.atom_count();
  double sum = 0.0;
  for (int m = 0; m <= n; ++m) sum += (m - 0.5 * n) * s(m, m).real();
  return sum;
}

Generator::Generator(const SystemConfig& config)
    : atoms_(config.atom_count),
      gamma_(config.gamma),
      detuning_(config.detuning),
      drive_coupling_(std::sqrt(config.gamma / 2.0)),
      lowering_(lowering_elements(config.atom_count)),
      half_decay_(static_cast<std::size_t>(config.atom_count + 1)) {
  for (int m = 0; m <= atoms_; ++m) half_decay_[m] = 0.5 * gamma_ * ladder_weight(atoms_, m);
}

void Generator::apply(const LadderMatrix& s, cplx drive, LadderMatrix& out) const {
  const int n = atoms_;
  const int dim = n + 1;
  const cplx ed = drive_coupling_ * drive;            // sqrt(gamma/2) E
  const cplx edc = drive_coupling_ * std::conj(drive); // sqrt(gamma/2) E*
  const double* e = lowering_.data();
  const cplx* src = s.data().data();
  cplx* dst = out.data().data();

  for (int m = 0; m < dim; ++m) {
    const cplx* row = src + static_cast<std::ptrdiff_t>(m) * dim;
    const cplx* row_up = m < n ? row + dim : nullptr;
    const cplx* row_down = m > 0 ? row - dim : nullptr;
    const double up = m < n ? e[m + 1] : 0.0;  // sqrt((m+1)(N-m))
    cplx* out_row = dst + static_cast<std::ptrdiff_t>(m) * dim;

    for (int mp = 0; mp < dim; ++mp) {
      const double re = -(half_decay_[m] + half_decay_[mp]);
      const double im = detuning_ * (m - mp);
      cplx acc = cplx(re, im) * row[mp];

      if (row_up != nullptr) {
        if (mp < n) acc += (gamma_ * up * e[mp + 1]) * row_up[mp + 1];
        acc -= ed * (up * row_up[mp]);
      }
      if (row_down != nullptr) acc += edc * (e[m] * row_down[mp]);
      if (mp < n) acc -= edc * (e[mp + 1] * row[mp + 1]);
      if (mp > 0) acc += ed * (e[mp] * row[mp - 1]);

      out_row[mp] = acc;
    }
  }
}

LadderMatrix apply_generator(const CollectiveState& state, cplx drive, const SystemConfig& config) {
  config.validate();
  if (state.s.atom_count() != config.atom_count)
    throw std::invalid_argument("state dimension does not match atom_count");
  LadderMatrix out(config.atom_count);
  Generator(config).apply(state.s, drive, out);
  return out;
}

Rk4Stepper::Rk4Stepper(const SystemConfig& config, const PulseSpec& pulse)
    : config_(config),
      pulse_(pulse),
      generator_(config),
      k1_(config.atom_count),
      k2_(config.atom_count),
      k3_(config.atom_count),
      k4_(config.atom_count),
      probe_(config.atom_count) {}

void Rk4Stepper::step(LadderMatrix& s, double t, double dt) {
  const double mid = t + 0.5 * dt;
  const cplx e0 = envelope_in_step(pulse_, config_, t, mid);
  const cplx eh = envelope_in_step(pulse_, config_, mid, mid);
  const cplx e1 = envelope_in_step(pulse_, config_, t + dt, mid);

  generator_.apply(s, e0, k1_);

  probe_ = s;
  probe_.add_scaled(k1_, 0.5 * dt);
  generator_.apply(probe_, eh, k2_);

  probe_ = s;
  probe_.add_scaled(k2_, 0.5 * dt);
  generator_.apply(probe_, eh, k3_);

  probe_ = s;
  probe_.add_scaled(k3_, dt);
  generator_.apply(probe_, e1, k4_);

  auto out = s.data();
  const auto a = k1_.data();
  const auto b = k2_.data();
  const auto c = k3_.data();
  const auto d = k4_.data();
  const double w = dt / 6.0;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * (a[k] + 2.0 * (b[k] + c[k]) + d[k]);
}

TimeGrid default_grid(const PulseSpec& pulse, const SystemConfig& config, int refine) {
  pulse.validate();
  config.validate();
  if (refine < 1) throw std::invalid_argument("refine must be >= 1");
  const double bound = std::min(pulse.duration / 2000.0, 0.002 / config.gamma);
  const auto steps = static_cast<std::size_t>(std::ceil(pulse.duration / bound - 1e-9));
  return TimeGrid{pulse.duration / static_cast<double>(steps * static_cast<std::size_t>(refine)),
                  pulse.duration};
}

std::size_t steps_in_pulse(const PulseSpec& pulse, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const double ratio = pulse.duration / dt;
  const double whole = std::round(ratio);
  if (whole < 1.0 || std::abs(ratio - whole) > 1e-6)
    throw std::invalid_argument("pulse duration must be an integer multiple of dt");
  return static_cast<std::size_t>(whole);
}

bool plausible_state(const LadderMatrix& s, double trace_tolerance) {
  const cplx tr = s.trace();
  if (!(std::abs(tr - 1.0) <= trace_tolerance)) return false;
  for (int m = 0; m < s.dim(); ++m) {
    const double p = s(m, m).real();
    if (!(p >= -trace_tolerance && p <= 1.0 + trace_tolerance)) return false;
  }
  return true;
}

namespace {

void record(TimeSeries& series, double t, cplx drive, const LadderMatrix& s) {
  series.t.push_back(t);
  series.drive.push_back(drive);
  series.jm.push_back(expect_Jm(s));
  series.jz.push_back(expect_Jz(s));
  series.jpjm.push_back(expect_JpJm(s));
}

}  // namespace

Evolution evolve(const SystemConfig& config, const PulseSpec& pulse, const TimeGrid& grid,
                 const EvolveOptions& options) {
  config.validate();
  pulse.validate();
  if (grid.t_end < pulse.duration) throw std::invalid_argument("t_end must be >= t_p");
  const double dt = grid.dt;
  const std::size_t pulse_steps = steps_in_pulse(pulse, dt);
  const auto min_steps = std::max(
      pulse_steps, static_cast<std::size_t>(std::ceil(grid.t_end / dt - 1e-9)));
  const auto cap_steps = std::max(
      min_steps,
      static_cast<std::size_t>(std::ceil((pulse.duration + options.tail_cap / config.gamma) / dt - 1e-9)));
  const double residual_limit = options.residual_tolerance * config.atom_count;
  const double half_n = 0.5 * config.atom_count;

  Evolution result;
  result.final_state = all_excited_state(config.atom_count);
  LadderMatrix& s = result.final_state.s;
  TimeSeries& series = result.series;
  series.dt = dt;
  series.pulse_end_index = pulse_steps;
  const std::size_t reserve = std::min<std::size_t>(cap_steps + 1, 4 * min_steps + 1024);
  series.t.reserve(reserve);
  series.drive.reserve(reserve);
  series.jm.reserve(reserve);
  series.jz.reserve(reserve);
  series.jpjm.reserve(reserve);
  if (options.keep_pulse_states) result.pulse_states.reserve(pulse_steps + 1);

  Rk4Stepper stepper(config, pulse);
  record(series, 0.0, envelope(pulse, config, 0.0), s);
  if (options.keep_pulse_states) result.pulse_states.push_back(s);

  std::size_t k = 0;
  while (true) {
    if (k >= min_steps) {
      const double residual = series.jz.back() + half_n;
      if (residual < residual_limit || k >= cap_steps) break;
    }
    const double t = static_cast<double>(k) * dt;
    stepper.step(s, t, dt);
    ++k;
    const double t_next = static_cast<double>(k) * dt;
    if (!plausible_state(s, options.trace_tolerance)) {
      std::ostringstream msg;
      msg << "state left the physical range at t = " << t_next << " (dt = " << dt
          << "); reduce the step";
      throw StepTooLarge(msg.str(), t_next);
    }
    record(series, t_next, envelope(pulse, config, t_next), s);
    if (options.keep_pulse_states && k <= pulse_steps) result.pulse_states.push_back(s);
  }
  result.final_state.t = static_cast<double>(k) * dt;
  return result;
}

}  // namespace superfluence
