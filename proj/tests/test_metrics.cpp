#include <gtest/gtest.h>

#include <cmath>

#include "superfluence/errors.hpp"
#include "superfluence/metrics.hpp"
#include "superfluence/oracles.hpp"

using namespace superfluence;

namespace {

AmplifierReport run(int atoms, PulseShape shape, double tp, double area, double theta = 0.0) {
  return simulate({atoms, 1.0, 0.0}, {shape, tp, area, theta}).report;
}

}  // namespace

TEST(OutputMoments, PassThroughWithoutAtomicResponse) {
  SystemConfig c{2, 1.0, 0.0};
  PulseSpec p{PulseShape::Sine, 1.0, kPi, 0.5};
  TimeSeries se;
  se.dt = 0.01;
  se.pulse_end_index = 100;
  for (int k = 0; k <= 150; ++k) {
    se.t.push_back(k * 0.01);
    se.drive.push_back(envelope(p, c, k * 0.01));
    se.jm.push_back({});
    se.jz.push_back(-1.0);
    se.jpjm.push_back(0.0);
  }
  output_moments(se, p, c);
  for (std::size_t k = 0; k < se.size(); ++k) {
    EXPECT_EQ(se.a_out[k], se.drive[k]);
    EXPECT_NEAR(se.a_out_number[k], std::norm(se.drive[k]), 1e-12);
    EXPECT_EQ(se.b_out_number[k], 0.0);
  }
}

TEST(PhotonNumbers, ReferencePointRectangular) {
  const auto r = run(10, PulseShape::Rectangular, 0.2, kPi);
  EXPECT_NEAR(r.numbers.n_in / 24.66, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_a / 32.77, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_ac / 31.95, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_b / 1.87, 1.0, 0.01);
}

TEST(PhotonNumbers, ReferencePointSine) {
  const auto r = run(10, PulseShape::Sine, 0.2, kPi);
  EXPECT_NEAR(r.numbers.n_in / 30.44, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_a / 38.72, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_ac / 37.69, 1.0, 0.01);
  EXPECT_NEAR(r.numbers.n_b / 1.70, 1.0, 0.01);
}

TEST(PhotonNumbers, VacuumSplitsEvenly) {
  for (int n : {1, 4, 10}) {
    const auto r = run(n, PulseShape::Rectangular, 1.0, 0.0);
    EXPECT_NEAR(r.numbers.n_a, 0.5 * n, 1e-3);
    EXPECT_NEAR(r.numbers.n_b, 0.5 * n, 1e-3);
    EXPECT_EQ(r.numbers.n_ac, 0.0);
    EXPECT_EQ(r.numbers.n_bc, 0.0);
    EXPECT_NEAR(r.probabilities.p_a, 0.5, 1e-3);
    EXPECT_NEAR(r.probabilities.p_b, 0.5, 1e-3);
    EXPECT_FALSE(r.gain.gain.has_value());
  }
}

TEST(PhotonNumbers, CoherentPartBoundedByTotal) {
  for (PulseShape shape : {PulseShape::Rectangular, PulseShape::Sine})
    for (double tp : {0.05, 1.0, 8.0}) {
      const auto r = run(6, shape, tp, 1.3 * kPi);
      EXPECT_LE(r.numbers.n_ac, r.numbers.n_a + 1e-9);
      EXPECT_LE(r.numbers.n_bc, r.numbers.n_b + 1e-9);
      EXPECT_LT(std::abs(r.conservation_residual), 1e-3);
    }
}

TEST(Probabilities, ShortPulseLimit) {
  const auto r = run(10, PulseShape::Rectangular, 0.01, kPi);
  EXPECT_NEAR(r.probabilities.p_a, 1.0, 0.05);
  EXPECT_NEAR(r.probabilities.p_ac, 1.0, 0.05);
  EXPECT_LT(r.probabilities.p_b, 0.03);
  ASSERT_TRUE(r.gain.gain);
  EXPECT_NEAR(*r.gain.gain / (1.0 + 2.0 * 10 * 0.01 / (kPi * kPi)), 1.0, 0.005);
}

TEST(Probabilities, LongPulseLimit) {
  const auto r = run(10, PulseShape::Rectangular, 100.0, kPi);
  const auto ref = oracles::long_pulse_reference({10, 1.0, 0.0}, {PulseShape::Rectangular, 100.0, kPi, 0.0});
  EXPECT_NEAR(r.probabilities.p_a, ref.p_a, 0.02);
  EXPECT_NEAR(r.probabilities.p_b, ref.p_b, 0.02);
  EXPECT_NEAR(r.probabilities.p_ac, ref.p_ac, 0.02);
}

TEST(Probabilities, InsensitiveToInputPhase) {
  for (PulseShape shape : {PulseShape::Rectangular, PulseShape::Sine}) {
    const auto a = run(5, shape, 0.4, kPi, 0.0);
    const auto b = run(5, shape, 0.4, kPi, 1.3);
    EXPECT_NEAR(a.numbers.n_a / b.numbers.n_a, 1.0, 1e-6);
    EXPECT_NEAR(a.numbers.n_ac / b.numbers.n_ac, 1.0, 1e-6);
    EXPECT_NEAR(a.numbers.n_b / b.numbers.n_b, 1.0, 1e-6);
    EXPECT_NEAR(*a.gain.gain / *b.gain.gain, 1.0, 1e-6);
  }
}

TEST(Mode, NormalisedOnGrid) {
  for (PulseShape shape : {PulseShape::Rectangular, PulseShape::Sine}) {
    PulseSpec p{shape, 0.3, kPi, 0.0};
    EXPECT_NEAR(matched_mode(p, 0.3 / 2000).norm(), 1.0, 1e-8);
  }
}

TEST(Mode, InputProjection) {
  for (PulseShape shape : {PulseShape::Rectangular, PulseShape::Sine}) {
    SystemConfig c{3, 1.0, 0.0};
    PulseSpec p{shape, 0.3, kPi, 0.8};
    const auto sim = simulate(c, p);
    const cplx expect = std::polar(std::sqrt(mean_input_photons(p, c)), p.theta);
    EXPECT_NEAR(std::abs(sim.report.amplitudes.c_in - expect), 0.0, 1e-6 * std::abs(expect));
  }
}

TEST(Mode, MismatchedGridThrows) {
  SystemConfig c{2, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.2, kPi, 0.0};
  auto sim = simulate(c, p);
  const auto mode = matched_mode(p, sim.report.dt);
  TwoTimeGrid small(10, sim.report.dt);
  EXPECT_THROW(project_mode(sim.evolution.series, small, mode, p, c), ModeMismatch);
  EXPECT_THROW(project_amplitudes(sim.evolution.series, matched_mode(p, sim.report.dt / 2), p, c),
               ModeMismatch);
}

TEST(Quadratures, UncorrelatedOutputIsCoherent) {
  SystemConfig c{2, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.2, kPi, 0.0};
  const auto sim = simulate(c, p);
  const auto mode = matched_mode(p, sim.report.dt);
  const TwoTimeGrid zeros(mode.weights.size(), sim.report.dt);
  const auto q = project_mode(sim.evolution.series, zeros, mode, p, c);
  EXPECT_DOUBLE_EQ(q.dx, 0.5);
  EXPECT_DOUBLE_EQ(q.dy, 0.5);
}

TEST(Quadratures, SingleAtomMatchesTimeBinModel) {
  SystemConfig c{1, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.3, kPi, 0.0};
  SimulationOptions opt;
  opt.quadratures = true;
  const auto q = *simulate(c, p, opt).report.quadratures;
  const auto ref = oracles::time_bin_single_atom(1.0, 0.3, kPi, 4000);
  EXPECT_NEAR(q.cdag_c.real(), ref.cdag_c, 2e-4);
  EXPECT_NEAR(q.c_c.real(), ref.c_c.real(), 2e-4);
  EXPECT_NEAR(q.dx, ref.dx, 2e-4);
  EXPECT_NEAR(q.dy, ref.dy, 2e-4);
  const cplx scattered = q.amplitudes.c_out - q.amplitudes.c_in;
  EXPECT_NEAR(std::abs(scattered) , std::abs(ref.scattered), 2e-4);
}

TEST(Quadratures, PhaseRotatesSecondMoments) {
  SystemConfig c{3, 1.0, 0.0};
  SimulationOptions opt;
  opt.quadratures = true;
  const auto a = *simulate(c, {PulseShape::Sine, 0.2, kPi, 0.0}, opt).report.quadratures;
  const auto b = *simulate(c, {PulseShape::Sine, 0.2, kPi, 0.9}, opt).report.quadratures;
  EXPECT_NEAR(a.dx, b.dx, 1e-9);
  EXPECT_NEAR(a.dy, b.dy, 1e-9);
  EXPECT_NEAR(std::abs(b.c_c - a.c_c * std::polar(1.0, 1.8)), 0.0, 1e-9);
}

TEST(Quadratures, StepRefinementConverges) {
  SystemConfig c{3, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.2, kPi, 0.0};
  SimulationOptions opt;
  opt.quadratures = true;
  const auto a = *simulate(c, p, opt).report.quadratures;
  opt.refine = 2;
  const auto b = *simulate(c, p, opt).report.quadratures;
  EXPECT_NEAR(a.cdag_c.real() / b.cdag_c.real(), 1.0, 1e-4);
  EXPECT_NEAR(a.c_c.real() / b.c_c.real(), 1.0, 1e-4);
}

TEST(Gain, RatioOfSquaredAmplitudes) {
  const ModeAmplitudes amp{std::polar(2.0, 0.4), std::polar(3.0, 0.4)};
  const auto g = gain_and_snr(amp, 0.4, 0.6);
  ASSERT_TRUE(g.gain && g.r_sn);
  EXPECT_NEAR(*g.gain, 2.25, 1e-12);
  EXPECT_NEAR(*g.r_sn, 2.25 / (4 * 0.36), 1e-12);
  EXPECT_FALSE(gain_and_snr(amp, 0.4).r_sn.has_value());
}

TEST(Gain, PhaseLeakDetected) {
  const ModeAmplitudes amp{cplx(2.0, 0.0), cplx(3.0, 0.5)};
  EXPECT_THROW(gain_and_snr(amp, 0.0), PhaseLeak);
}

TEST(Gain, UndefinedWithoutInput) {
  const auto g = gain_and_snr({cplx{}, cplx{}}, 0.0, 0.5);
  EXPECT_FALSE(g.gain.has_value());
  EXPECT_FALSE(g.r_sn.has_value());
}
