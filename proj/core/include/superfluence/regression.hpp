#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "superfluence/dicke.hpp"
#include "superfluence/ladder.hpp"
#include "superfluence/model.hpp"

namespace superfluence {

// Two-time functions via quantum regression. A two-point function
// s2(t2, t1)_{mm'} = <X(t1) tau_{m,m'}(t2)> (or <tau_{m,m'}(t2) X(t1)>)
// obeys the same linear equation in t2 as the one-point s, so it is evolved
// with the same RK4 kernel from an equal-time seed.

/// Equal-time seed for the operator pattern tau_{l,l'} at t1 placed to the
/// left: s2_{mm'}(t1, t1) = delta_{l' m} s_{l m'}(t1).
LadderMatrix seed_pattern(const LadderMatrix& s, int l, int lp);

/// Seeds for the J_+(t1) patterns tau_{l,l-1}, l = 1..N, summed with their
/// ladder weights. By linearity, evolving this single matrix and contracting
/// it at t2 gives <J_+(t1) X(t2)> for any X.
struct CorrelationSlab {
  double t1 = 0.0;
  LadderMatrix raised;
};

CorrelationSlab seed_slab(const CollectiveState& state_at_t1);

/// Equal-time seed with J_-(t1) placed to the right: <tau_{m,m'} J_->.
/// Evolved in t2 and contracted it gives <X(t2) J_-(t1)>. Used to cross-check
/// the adjoint-symmetry fills of the two-time grid.
LadderMatrix seed_lowering_right(const LadderMatrix& s);

/// Raw (not connected) correlators along t2 = t1 + k dt, k = 0..steps.
struct SlabTrajectory {
  double t1 = 0.0;
  double dt = 0.0;
  std::vector<cplx> plus_minus;  ///< <J_+(t1) J_-(t2)>
  std::vector<cplx> plus_plus;   ///< <J_+(t1) J_+(t2)>
};

/// Evolves a seeded matrix from t_start for `steps` steps of dt, calling
/// visit(k, matrix) at k = 0..steps. Throws StepTooLarge on blow-up.
void evolve_seed(LadderMatrix seed, const PulseSpec& pulse, const SystemConfig& config,
                 double t_start, double dt, std::size_t steps,
                 const std::function<void(std::size_t, const LadderMatrix&)>& visit);

SlabTrajectory evolve_slab(const CorrelationSlab& slab, const PulseSpec& pulse,
                           const SystemConfig& config, double dt, std::size_t steps);

/// Connected two-time correlators of the atomic part of the output field on
/// the square [0, T]^2, T = (size - 1) dt:
///   pm(i, j) = <J_+(t_i), J_-(t_j)>          = (2/gamma) <a_out^dag(t_i), a_out(t_j)>
///   pp(i, j) = <J_+(t_<), J_+(t_>)>           = (2/gamma) <a_out^dag(t_i), a_out^dag(t_j)>
///   mm(i, j) = <J_-(t_>), J_-(t_<)> = conj(pp) = (2/gamma) <a_out(t_i), a_out(t_j)>
/// where t_< / t_> are the earlier / later of the two times. The output
/// operators at different times commute, so pp and mm are symmetric, and
/// pm(i, j) = conj(pm(j, i)). Only the i <= j half is evolved.
class TwoTimeGrid {
public:
  TwoTimeGrid() = default;
  TwoTimeGrid(std::size_t size, double dt);

  std::size_t size() const noexcept { return size_; }
  double dt() const noexcept { return dt_; }
  double span() const noexcept { return dt_ * static_cast<double>(size_ - 1); }

  cplx& pm(std::size_t i, std::size_t j) { return pm_[i * size_ + j]; }
  cplx& pp(std::size_t i, std::size_t j) { return pp_[i * size_ + j]; }
  const cplx& pm(std::size_t i, std::size_t j) const { return pm_[i * size_ + j]; }
  const cplx& pp(std::size_t i, std::size_t j) const { return pp_[i * size_ + j]; }
  cplx mm(std::size_t i, std::size_t j) const { return std::conj(pp_[i * size_ + j]); }

private:
  std::size_t size_ = 0;
  double dt_ = 0.0;
  std::vector<cplx> pm_, pp_;
};

/// Builds the two-time grid over [0, window_steps * dt] from a one-point
/// evolution that kept its pulse states. Slabs for different t1 run on
/// `threads` workers (0 = worker_count()).
TwoTimeGrid assemble_two_time(const SystemConfig& config, const PulseSpec& pulse,
                              const Evolution& one_point, std::size_t window_steps,
                              unsigned threads = 0);

}  // namespace superfluence
