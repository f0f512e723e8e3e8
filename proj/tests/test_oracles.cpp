#include <gtest/gtest.h>

#include <cmath>

#include "ladder_oracle.hpp"
#include "superfluence/errors.hpp"
#include "superfluence/metrics.hpp"
#include "superfluence/oracles.hpp"

using namespace superfluence;
namespace so = superfluence::oracles;

TEST(ShortPulse, RotationEndpoints) {
  SystemConfig c{10, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.05, kPi, 0.7};
  const auto sol = so::short_pulse_reference(c, p);
  const double half = kPi / (2.0 * sol.rabi);
  EXPECT_NEAR(std::abs(sol.jm(half) - std::polar(-5.0, 0.7)), 0.0, 1e-12);
  EXPECT_NEAR(sol.jz(0.0), 5.0, 1e-12);
  EXPECT_NEAR(sol.jz(0.05), -5.0, 1e-12);
  EXPECT_NEAR(sol.n_ac_limit(), sol.n_in() + 10, 1e-12);
  EXPECT_NEAR(sol.n_in(), mean_input_photons(p, c), 1e-9);
}

TEST(ShortPulse, RequiresRectangularPi) {
  SystemConfig c{2, 1.0, 0.0};
  EXPECT_THROW(so::short_pulse_reference(c, {PulseShape::Sine, 0.1, kPi, 0.0}), std::invalid_argument);
  EXPECT_THROW(so::long_pulse_reference(c, {PulseShape::Rectangular, 0.1, 2.0, 0.0}), std::invalid_argument);
}

TEST(LongPulse, ClosedForm) {
  const auto a = so::long_pulse_reference({10, 1.0, 0.0}, {PulseShape::Rectangular, 100.0, kPi, 0.0});
  EXPECT_NEAR(a.p_a, 0.4951, 1e-4);
  const auto b = so::long_pulse_reference({20, 1.0, 0.0}, {PulseShape::Rectangular, 100.0, kPi, 0.0});
  EXPECT_NEAR(b.p_ac, -0.00247, 1e-5);
  const auto c = so::long_pulse_reference({20, 1.0, 0.0}, {PulseShape::Rectangular, 1e12, kPi, 0.0});
  EXPECT_NEAR(c.p_a, 0.5, 1e-9);
  EXPECT_NEAR(c.p_ac, 0.0, 1e-9);
}

TEST(Pacs, SingleAddedPhoton) {
  EXPECT_NEAR(so::pacs_coherent_number(4.0, 1), 5.76, 1e-12);
  EXPECT_NEAR(so::pacs_coherent_number_fock(4.0, 1), 5.76, 1e-10);
  EXPECT_EQ(so::pacs_coherent_number(0.0, 3), 0.0);
}

TEST(Pacs, ClosedFormMatchesFockSum) {
  for (int n = 1; n <= 10; ++n)
    for (double nin : {0.5, 4.0, 30.0, 100.0}) {
      const double a = so::pacs_coherent_number(nin, n);
      EXPECT_NEAR(so::pacs_coherent_number_fock(nin, n) / a, 1.0, 1e-8) << n << " " << nin;
    }
}

TEST(Pacs, ExcessCoherenceApproachesN) {
  for (int n : {1, 5}) {
    const double excess = so::pacs_coherent_number(100.0, n) - (100.0 + n);
    EXPECT_NEAR(excess / n, 1.0, 0.05) << n;
  }
  // For ten added photons the ratio is about 0.915 at N_in = 100 and only
  // closes on 1 as N_in grows.
  double last = 0.0;
  for (double nin : {100.0, 200.0, 400.0}) {
    const double ratio = (so::pacs_coherent_number(nin, 10) - (nin + 10.0)) / 10.0;
    EXPECT_GT(ratio, last) << nin;
    EXPECT_LT(ratio, 1.0) << nin;
    last = ratio;
  }
  EXPECT_NEAR(last, 1.0, 0.03);
}

TEST(JaynesCummings, DecayProbabilityApproachesOne) {
  double last = 0.0;
  for (double nbar : {25.0, 100.0, 400.0}) {
    const auto st = so::jc_conditional_state(nbar, 1.0, so::jc_pi_time(nbar, 1.0));
    EXPECT_GT(st.decay_probability, last);
    last = st.decay_probability;
  }
  EXPECT_GE(last, 0.99);
}

TEST(JaynesCummings, TwoBranchOverlap) {
  const auto st = so::jc_conditional_state(400.0, 1.0, so::jc_pi_time(400.0, 1.0));
  EXPECT_GE(st.overlap, 0.99);
}

TEST(JaynesCummings, NothingDecaysAtStart) {
  EXPECT_EQ(so::jc_conditional_state(100.0, 1.0, 0.0).decay_probability, 0.0);
}

TEST(JaynesCummings, TruncationConverged) {
  const double nbar = 100.0;
  const double t = so::jc_pi_time(nbar, 1.0);
  const auto a = so::jc_conditional_state(nbar, 1.0, t);
  const auto b = so::jc_conditional_state(nbar, 1.0, t, so::fock_cutoff(nbar) + 50);
  EXPECT_LT(std::abs(a.decay_probability - b.decay_probability), 1e-9);
}

TEST(PhotonAdder, MomentsOfShiftedCoherentState) {
  const auto r = so::photon_adder_check(25.0, 0.0);
  EXPECT_NEAR(r.number, 26.0, 1e-9);
  EXPECT_NEAR(std::abs(r.amplitude), std::sqrt(26.0), 1e-3);
  const double expansion = 5.0 + 1.0 / 10.0 - 1.0 / (8.0 * 125.0);
  EXPECT_NEAR(std::abs(r.amplitude), expansion, 1e-3);
  const auto turned = so::photon_adder_check(25.0, 1.1);
  EXPECT_NEAR(std::arg(turned.amplitude), 1.1, 1e-12);
  EXPECT_NEAR(std::abs(turned.amplitude), std::abs(r.amplitude), 1e-12);
}

TEST(Semiclassical, ConstantsOfMotion) {
  const so::SemiclassicalParams params{2.5, 1000.0, 1.0};
  const double t_pi = so::jc_pi_time(params.nbar, params.g);
  const std::size_t steps = 4000;
  EXPECT_LT(so::meanfield_invariant_drift(params, t_pi / steps, steps), 1e-6);
}

TEST(Semiclassical, PolarAndCartesianAgree) {
  const so::SemiclassicalParams params{3.0, 200.0, 1.0};
  const double t_pi = so::jc_pi_time(params.nbar, params.g);
  const std::size_t steps = 4000;
  const auto polar = so::semiclassical_evolve(params, t_pi / steps, steps);
  const auto cart = so::meanfield_evolve(params, t_pi / steps, steps);
  for (std::size_t k = 0; k <= steps; k += 500) {
    EXPECT_NEAR(polar.r[k], std::abs(cart[k].a), 1e-8);
    EXPECT_NEAR(polar.phi[k], std::arg(cart[k].a), 1e-8);
  }
}

TEST(Semiclassical, LinearisedPhase) {
  const so::SemiclassicalParams params{0.5, 1e4, 1.0};
  const double t_end = (kPi / 2.0) / (params.g * std::sqrt(params.nbar));
  const std::size_t steps = 2000;
  const auto traj = so::semiclassical_evolve(params, t_end / steps, steps);
  for (std::size_t k = 200; k <= steps; k += 200) {
    const auto lin = so::linearized_reference(params.m, params.nbar, params.g, traj.t[k]);
    EXPECT_NEAR(traj.phi[k] / lin.phi, 1.0, 0.05);
  }
}

TEST(Semiclassical, ZeroSpinIsFixedPoint) {
  const auto traj = so::semiclassical_evolve({0.0, 50.0, 1.0}, 1e-3, 500);
  for (std::size_t k = 0; k < traj.t.size(); ++k) {
    EXPECT_EQ(traj.phi[k], 0.0);
    EXPECT_EQ(traj.eta[k], 0.0);
  }
}

TEST(Semiclassical, TransverseVarianceOfInvertedState) {
  for (int n : {1, 4, 9}) {
    const auto jm = oracle::lowering(n);
    const auto jx = oracle::cplx(0.5) * (jm + oracle::dagger(jm));
    const auto jx2 = jx * jx;
    EXPECT_NEAR(jx2(n, n).real(), n / 4.0, 1e-12);
  }
}

TEST(PhaseSpread, CoherentFloor) {
  EXPECT_NEAR(so::phase_spread_estimate(10, 1e12, 1.0).delta_y, 0.5, 1e-9);
}

TEST(PhaseSpread, QuotedEstimates) {
  const double expect[] = {0.63, 0.86, 1.0};
  const double tol[] = {0.01, 0.01, 0.1};
  const double durations[] = {0.1, 0.3, 0.5};
  for (int k = 0; k < 3; ++k) {
    SystemConfig c{10, 1.0, 0.0};
    PulseSpec p{PulseShape::Rectangular, durations[k], kPi, 0.0};
    const auto r = simulate(c, p).report;
    const auto est = so::phase_spread_estimate(10, r.numbers.n_in, *r.gain.gain);
    EXPECT_NEAR(est.delta_y, expect[k], tol[k]) << durations[k];
  }
}

TEST(SingleAtom, RegressionFormula) {
  EXPECT_DOUBLE_EQ(so::single_atom_regression(0.0, 0.0, 1.0), 1.0);
  EXPECT_NEAR(so::single_atom_regression(0.0, 2.0, 1.0), std::exp(-1.0), 1e-15);
  EXPECT_THROW(so::single_atom_regression(1.0, 0.5, 1.0), std::invalid_argument);
}

TEST(TimeBin, ConvergesInBinCount) {
  const auto a = so::time_bin_single_atom(1.0, 0.3, kPi, 2000);
  const auto b = so::time_bin_single_atom(1.0, 0.3, kPi, 4000);
  EXPECT_NEAR(a.c_c.real(), b.c_c.real(), 1e-4);
  EXPECT_NEAR(a.cdag_c, b.cdag_c, 1e-4);
  EXPECT_LT(b.truncation, 1e-9);
}

TEST(TimeBin, VacuumDriveLeavesNoPhase) {
  const auto r = so::time_bin_single_atom(1.0, 0.5, 0.0, 1000);
  EXPECT_NEAR(std::abs(r.scattered), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(r.c_c), 0.0, 1e-14);
  EXPECT_GT(r.cdag_c, 0.0);
}
