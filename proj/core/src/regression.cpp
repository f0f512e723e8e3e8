#include "superfluence/regression.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "superfluence/errors.hpp"
#include "superfluence/parallel.hpp"

namespace superfluence {

LadderMatrix seed_pattern(const LadderMatrix& s, int l, int lp) {
  const int n = s.atom_count();
  if (l < 0 || l > n || lp < 0 || lp > n) throw std::out_of_range("seed pattern index");
  LadderMatrix out(n);
  for (int mp = 0; mp <= n; ++mp) out(lp, mp) = s(l, mp);
  return out;
}

CorrelationSlab seed_slab(const CollectiveState& state_at_t1) {
  const LadderMatrix& s = state_at_t1.s;
  const int n = s.atom_count();
  const auto e = lowering_elements(n);
  CorrelationSlab slab{state_at_t1.t, LadderMatrix(n)};
  // J_+ tau_{m,m'} = sqrt((m+1)(N-m)) tau_{m+1,m'}
  for (int m = 0; m < n; ++m) {
    for (int mp = 0; mp <= n; ++mp) slab.raised(m, mp) = e[m + 1] * s(m + 1, mp);
  }
  return slab;
}

LadderMatrix seed_lowering_right(const LadderMatrix& s) {
  const int n = s.atom_count();
  const auto e = lowering_elements(n);
  LadderMatrix out(n);
  // tau_{m,m'} J_- = sqrt((m'+1)(N-m')) tau_{m,m'+1}
  for (int m = 0; m <= n; ++m) {
    for (int mp = 0; mp < n; ++mp) out(m, mp) = e[mp + 1] * s(m, mp + 1);
  }
  return out;
}

void evolve_seed(LadderMatrix seed, const PulseSpec& pulse, const SystemConfig& config,
                 double t_start, double dt, std::size_t steps,
                 const std::function<void(std::size_t, const LadderMatrix&)>& visit) {
  Rk4Stepper stepper(config, pulse);
  const double bound = 4.0 * (config.atom_count + 1.0);
  visit(0, seed);
  for (std::size_t k = 0; k < steps; ++k) {
    stepper.step(seed, t_start + static_cast<double>(k) * dt, dt);
    for (const cplx& v : seed.data()) {
      if (!(std::abs(v) <= bound)) {
        std::ostringstream msg;
        msg << "two-time evolution diverged at t2 = " << t_start + static_cast<double>(k + 1) * dt
            << " (dt = " << dt << "); reduce the step";
        throw StepTooLarge(msg.str(), t_start + static_cast<double>(k + 1) * dt);
      }
    }
    visit(k + 1, seed);
  }
}

SlabTrajectory evolve_slab(const CorrelationSlab& slab, const PulseSpec& pulse,
                           const SystemConfig& config, double dt, std::size_t steps) {
  const auto e = lowering_elements(config.atom_count);
  SlabTrajectory out;
  out.t1 = slab.t1;
  out.dt = dt;
  out.plus_minus.resize(steps + 1);
  out.plus_plus.resize(steps + 1);
  evolve_seed(slab.raised, pulse, config, slab.t1, dt, steps,
              [&](std::size_t k, const LadderMatrix& m) {
                out.plus_minus[k] = contract_lowering(m, e);
                out.plus_plus[k] = contract_raising(m, e);
              });
  return out;
}

TwoTimeGrid::TwoTimeGrid(std::size_t size, double dt)
    : size_(size), dt_(dt), pm_(size * size), pp_(size * size) {}

TwoTimeGrid assemble_two_time(const SystemConfig& config, const PulseSpec& pulse,
                              const Evolution& one_point, std::size_t window_steps,
                              unsigned threads) {
  const TimeSeries& series = one_point.series;
  if (one_point.pulse_states.size() < window_steps + 1 || series.size() < window_steps + 1)
    throw std::invalid_argument("one-point evolution does not cover the two-time window");
  const std::size_t size = window_steps + 1;
  const double dt = series.dt;
  TwoTimeGrid grid(size, dt);

  parallel_for(size, threads == 0 ? worker_count() : threads, [&](std::size_t i) {
    const CollectiveState at_t1{series.t[i], one_point.pulse_states[i]};
    const SlabTrajectory traj = evolve_slab(seed_slab(at_t1), pulse, config, dt, size - 1 - i);
    const cplx jp_i = std::conj(series.jm[i]);
    for (std::size_t j = i; j < size; ++j) {
      const cplx jm_j = series.jm[j];
      const cplx pm = traj.plus_minus[j - i] - jp_i * jm_j;
      const cplx pp = traj.plus_plus[j - i] - jp_i * std::conj(jm_j);
      grid.pm(i, j) = pm;
      grid.pp(i, j) = pp;
    }
  });

  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      grid.pm(i, j) = std::conj(grid.pm(j, i));
      grid.pp(i, j) = grid.pp(j, i);
    }
  }
  return grid;
}

}  // namespace superfluence
