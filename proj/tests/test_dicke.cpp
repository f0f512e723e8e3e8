#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ladder_oracle.hpp"
#include "superfluence/dicke.hpp"
#include "superfluence/errors.hpp"

using namespace superfluence;

TEST(Expectations, AllExcited) {
  const auto st = all_excited_state(7);
  EXPECT_DOUBLE_EQ(expect_Jz(st), 3.5);
  EXPECT_DOUBLE_EQ(expect_JpJm(st), 7.0);
  EXPECT_EQ(expect_Jm(st), cplx{});
}

TEST(Expectations, Ground) {
  const auto st = ground_state(4);
  EXPECT_DOUBLE_EQ(expect_Jz(st), -2.0);
  EXPECT_DOUBLE_EQ(expect_JpJm(st), 0.0);
  EXPECT_EQ(expect_Jm(st), cplx{});
}

TEST(Expectations, EqualMixtureIsCentred) {
  LadderMatrix s(2);
  for (int m = 0; m <= 2; ++m) s(m, m) = 1.0 / 3.0;
  EXPECT_NEAR(expect_Jz(s), 0.0, 1e-15);
}

TEST(Expectations, MatchDenseOperators) {
  std::mt19937_64 rng(7);
  const int n = 5;
  const auto s = oracle::random_state(n, rng);
  const auto rho = oracle::to_rho(s);
  const auto jm = oracle::lowering(n);
  EXPECT_NEAR(std::abs(expect_Jm(s) - oracle::trace(jm * rho)), 0.0, 1e-12);
  EXPECT_NEAR(expect_JpJm(s), oracle::trace(oracle::dagger(jm) * jm * rho).real(), 1e-12);
  EXPECT_NEAR(expect_Jz(s), oracle::trace(oracle::jz(n) * rho).real(), 1e-12);
}

TEST(Generator, SingleAtomDecay) {
  SystemConfig c{1, 1.0, 0.0};
  const auto ds = apply_generator(all_excited_state(1), {}, c);
  EXPECT_DOUBLE_EQ(ds(1, 1).real(), -1.0);
  EXPECT_DOUBLE_EQ(ds(0, 0).real(), 1.0);
}

TEST(Generator, GroundIsStationary) {
  SystemConfig c{6, 1.3, 0.0};
  const auto ds = apply_generator(ground_state(6), {}, c);
  for (const cplx& v : ds.data()) EXPECT_EQ(v, cplx{});
}

TEST(Generator, MatchesDenseMasterEquation) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n : {1, 2, 5, 9}) {
    for (int trial = 0; trial < 3; ++trial) {
      SystemConfig c{n, 0.5 + trial, 0.3 * trial - 0.2};
      const cplx drive{g(rng), g(rng)};
      const auto s = oracle::random_state(n, rng);
      const auto ds = apply_generator({0.0, s}, drive, c);
      const auto expect = oracle::from_rho(
          oracle::lindblad_rhs(oracle::to_rho(s), n, c.gamma, c.detuning, drive));
      for (int m = 0; m <= n; ++m)
        for (int mp = 0; mp <= n; ++mp) EXPECT_NEAR(std::abs(ds(m, mp) - expect(m, mp)), 0.0, 1e-10);
    }
  }
}

TEST(Generator, ConservesTrace) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    SystemConfig c{8, 1.0, g(rng)};
    const auto s = oracle::random_state(8, rng);
    EXPECT_NEAR(std::abs(apply_generator({0.0, s}, {g(rng), g(rng)}, c).trace()), 0.0, 1e-10);
  }
}

TEST(Generator, CascadeRates) {
  const int n = 6;
  SystemConfig c{n, 0.7, 0.0};
  std::mt19937_64 rng(5);
  const auto s = oracle::random_state(n, rng);
  const auto ds = apply_generator({0.0, s}, {}, c);
  for (int m = 0; m <= n; ++m) {
    double expect = -c.gamma * m * (n - m + 1) * s(m, m).real();
    if (m < n) expect += c.gamma * (m + 1) * (n - m) * s(m + 1, m + 1).real();
    EXPECT_NEAR(ds(m, m).real(), expect, 1e-12);
  }
}

TEST(Evolve, SingleAtomFreeDecay) {
  SystemConfig c{1, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 1.0, 0.0, 0.0};
  const auto ev = evolve(c, p, default_grid(p, c));
  double worst = 0.0;
  for (std::size_t k = 0; k < ev.series.size(); ++k)
    worst = std::max(worst, std::abs(ev.series.jpjm[k] - std::exp(-ev.series.t[k])));
  EXPECT_LT(worst, 1e-6);
}

TEST(Evolve, NoDriveNoCoherence) {
  SystemConfig c{10, 1.0, 0.0};
  PulseSpec p{PulseShape::Sine, 0.5, 0.0, 0.0};
  const auto ev = evolve(c, p, default_grid(p, c));
  for (const cplx& v : ev.series.jm) EXPECT_EQ(v, cplx{});
  EXPECT_LT(ev.series.jz.back() + 5.0, 1e-5);
}

TEST(Evolve, ShortPulseFollowsRabiRotation) {
  SystemConfig c{10, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.01, kPi, 0.4};
  const auto ev = evolve(c, p, default_grid(p, c));
  const auto& se = ev.series;
  const double rabi = kPi / p.duration;
  double worst = 0.0;
  for (std::size_t k = 0; k <= se.pulse_end_index; ++k) {
    const cplx ref = std::polar(-5.0 * std::sin(rabi * se.t[k]), p.theta);
    worst = std::max(worst, std::abs(se.jm[k] - ref));
  }
  EXPECT_LE(worst, 0.03 * 10);
  EXPECT_NEAR(se.jz[se.pulse_end_index], -5.0, 0.2);
}

TEST(Evolve, StateStaysPhysical) {
  SystemConfig c{12, 1.0, 0.5};
  PulseSpec p{PulseShape::Sine, 0.8, 1.5 * kPi, 0.9};
  const auto ev = evolve(c, p, default_grid(p, c));
  const auto& s = ev.final_state.s;
  EXPECT_NEAR(std::abs(s.trace() - 1.0), 0.0, 1e-6);
  for (int m = 0; m <= 12; ++m) {
    EXPECT_GE(s(m, m).real(), -1e-8);
    EXPECT_LE(s(m, m).real(), 1.0 + 1e-8);
    for (int mp = 0; mp <= 12; ++mp) EXPECT_NEAR(std::abs(s(m, mp) - std::conj(s(mp, m))), 0.0, 1e-9);
  }
}

TEST(Evolve, HalvingStepConverges) {
  SystemConfig c{5, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.5, kPi, 0.0};
  auto g1 = default_grid(p, c, 1);
  auto g2 = default_grid(p, c, 2);
  g1.t_end = g2.t_end = 3.0;
  EvolveOptions opt;
  opt.tail_cap = 2.5;
  const auto a = evolve(c, p, g1, opt).series;
  const auto b = evolve(c, p, g2, opt).series;
  const std::size_t n = std::min(a.size(), (b.size() + 1) / 2);
  double scale_jm = 0.0, scale_jz = 0.0, scale_jj = 0.0;
  double d_jm = 0.0, d_jz = 0.0, d_jj = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    scale_jm = std::max(scale_jm, std::abs(a.jm[k]));
    scale_jz = std::max(scale_jz, std::abs(a.jz[k]));
    scale_jj = std::max(scale_jj, std::abs(a.jpjm[k]));
    d_jm = std::max(d_jm, std::abs(a.jm[k] - b.jm[2 * k]));
    d_jz = std::max(d_jz, std::abs(a.jz[k] - b.jz[2 * k]));
    d_jj = std::max(d_jj, std::abs(a.jpjm[k] - b.jpjm[2 * k]));
  }
  EXPECT_LT(d_jm / scale_jm, 1e-6);
  EXPECT_LT(d_jz / scale_jz, 1e-6);
  EXPECT_LT(d_jj / scale_jj, 1e-6);
}

TEST(Evolve, PulseEdgeOnGrid) {
  SystemConfig c{3, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 0.3, kPi, 0.0};
  const auto ev = evolve(c, p, default_grid(p, c));
  EXPECT_NEAR(ev.series.t[ev.series.pulse_end_index], 0.3, 1e-12);
  EXPECT_THROW(evolve(c, p, TimeGrid{0.07, 0.3}), std::invalid_argument);
}

TEST(Evolve, CoarseStepThrows) {
  SystemConfig c{20, 1.0, 0.0};
  PulseSpec p{PulseShape::Rectangular, 1.0, kPi, 0.0};
  try {
    evolve(c, p, TimeGrid{0.25, 1.0});
    FAIL() << "expected StepTooLarge";
  } catch (const StepTooLarge& e) {
    EXPECT_GT(e.time(), 0.0);
  }
}
