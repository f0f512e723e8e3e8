#include "superfluence/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "superfluence/errors.hpp"

namespace superfluence::oracles {

namespace {

void require_rect_pi(const PulseSpec& pulse) {
  if (pulse.shape != PulseShape::Rectangular || std::abs(pulse.area - kPi) > 1e-12)
    throw std::invalid_argument("reference requires a rectangular pi pulse");
}

// log(sum exp(x_i)) without overflow.
double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

// Fock amplitudes of |alpha| e^{i phase} truncated at `cutoff` (inclusive).
std::vector<cplx> coherent_amplitudes(double modulus, double phase, std::size_t cutoff) {
  std::vector<cplx> out(cutoff + 1);
  const double n = modulus * modulus;
  for (std::size_t k = 0; k <= cutoff; ++k) {
    const double kk = static_cast<double>(k);
    const double log_mag =
        modulus > 0.0 ? -0.5 * n + kk * std::log(modulus) - 0.5 * std::lgamma(kk + 1.0)
                      : (k == 0 ? 0.0 : -INFINITY);
    out[k] = std::polar(std::exp(log_mag), kk * phase);
  }
  return out;
}

double squared_norm(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  return s;
}

}  // namespace

cplx ShortPulseSolution::jm(double t) const {
  if (t < 0.0 || t > kPi / rabi) return {};
  return std::polar(-0.5 * atom_count * std::sin(rabi * t), theta);
}

double ShortPulseSolution::jz(double t) const {
  if (t < 0.0 || t > kPi / rabi) return 0.0;
  return 0.5 * atom_count * std::cos(rabi * t);
}

cplx ShortPulseSolution::a_out(double t) const {
  if (t < 0.0 || t > kPi / rabi) return {};
  const double amp = rabi / std::sqrt(2.0 * gamma) + atom_count * std::sqrt(gamma / 8.0) * std::sin(rabi * t);
  return std::polar(amp, theta);
}

double ShortPulseSolution::n_in() const { return kPi * rabi / (2.0 * gamma); }
double ShortPulseSolution::n_ac_limit() const { return n_in() + atom_count; }
double ShortPulseSolution::n_a_limit() const { return n_in() + atom_count; }
double ShortPulseSolution::n_b_limit() const { return 0.0; }

double ShortPulseSolution::gain() const {
  const double tp = kPi / rabi;
  const double lift = 1.0 + atom_count * gamma * tp / (kPi * kPi);
  return lift * lift;
}

ShortPulseSolution short_pulse_reference(const SystemConfig& config, const PulseSpec& pulse) {
  require_rect_pi(pulse);
  return ShortPulseSolution{config.atom_count, config.gamma, kPi / pulse.duration, pulse.theta};
}

LongPulseProbabilities long_pulse_reference(const SystemConfig& config, const PulseSpec& pulse) {
  require_rect_pi(pulse);
  const double shift = kPi * kPi / (2.0 * config.atom_count * config.gamma * pulse.duration);
  return {0.5 - shift, 0.5 + shift, -shift};
}

double pacs_coherent_number(double n_in, int added) {
  if (added < 1) throw std::invalid_argument("photon-added state needs N >= 1");
  if (n_in < 0.0) throw std::invalid_argument("n_in must be >= 0");
  if (n_in == 0.0) return 0.0;
  const double n = added;
  const double log_n_in = std::log(n_in);

  // numerator / alpha = sum_{M=0}^{N} A_{N+1,M} n_in^{N-M},
  //   A_{K,M} = K! (K-1)! / (M! (K-M)! (K-M-1)!)
  std::vector<double> num, den;
  for (int m = 0; m <= added; ++m) {
    const double mm = m;
    const double k = n + 1.0;
    num.push_back(std::lgamma(k + 1.0) + std::lgamma(k) - std::lgamma(mm + 1.0) -
                  std::lgamma(k - mm + 1.0) - std::lgamma(k - mm) + (n - mm) * log_n_in);
    // B_{N,M} = (N!)^2 / (M! ((N-M)!)^2)
    den.push_back(2.0 * std::lgamma(n + 1.0) - std::lgamma(mm + 1.0) -
                  2.0 * std::lgamma(n - mm + 1.0) + (n - mm) * log_n_in);
  }
  const double log_ratio = log_sum_exp(num) - log_sum_exp(den);
  return n_in * std::exp(2.0 * log_ratio);
}

double pacs_coherent_number_fock(double n_in, int added) {
  if (added < 1) throw std::invalid_argument("photon-added state needs N >= 1");
  if (n_in < 0.0) throw std::invalid_argument("n_in must be >= 0");
  if (n_in == 0.0) return 0.0;
  const double n = added;
  const auto cutoff = static_cast<std::size_t>(
      std::ceil(n_in + 12.0 * std::sqrt(n_in + n) + 2.0 * n + 40.0));

  // (a^dag)^N |alpha> has amplitude C_j sqrt((j+N)!/j!) on |j+N>.
  std::vector<double> log_amp(cutoff + 1);
  const double log_alpha = 0.5 * std::log(n_in);
  for (std::size_t j = 0; j <= cutoff; ++j) {
    const double jj = static_cast<double>(j);
    log_amp[j] = jj * log_alpha - 0.5 * std::lgamma(jj + 1.0) +
                 0.5 * (std::lgamma(jj + n + 1.0) - std::lgamma(jj + 1.0));
  }
  const double top = *std::max_element(log_amp.begin(), log_amp.end());
  std::vector<double> amp(cutoff + 1);
  for (std::size_t j = 0; j <= cutoff; ++j) amp[j] = std::exp(log_amp[j] - top);

  double norm = 0.0, first = 0.0;
  for (std::size_t j = 0; j <= cutoff; ++j) {
    norm += amp[j] * amp[j];
    if (j < cutoff) {
      const double photons = static_cast<double>(j) + n + 1.0;  // a|k+1> = sqrt(k+1)|k>
      first += amp[j] * amp[j + 1] * std::sqrt(photons);
    }
  }
  const double mean = first / norm;
  return mean * mean;
}

std::size_t fock_cutoff(double nbar) {
  return static_cast<std::size_t>(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 10.0));
}

double jc_pi_time(double nbar, double g) { return kPi / (2.0 * g * std::sqrt(nbar)); }

JcConditionalState jc_conditional_state(double nbar, double g, double t, std::size_t cutoff) {
  if (!(nbar >= 1.0)) throw std::invalid_argument("nbar must be >= 1");
  if (cutoff == 0) cutoff = fock_cutoff(nbar);
  const double alpha = std::sqrt(nbar);
  const auto c = coherent_amplitudes(alpha, 0.0, cutoff);

  JcConditionalState out;
  out.exact.assign(cutoff + 2, cplx{});
  for (std::size_t n = 0; n <= cutoff; ++n) {
    const double x = g * std::sqrt(static_cast<double>(n) + 1.0) * t;
    out.exact[n + 1] = cplx(0.0, -1.0) * c[n] * std::sin(x);
  }
  out.decay_probability = squared_norm(out.exact);

  // -1/2 e^{i(w + slow)} V^dag|alpha e^{i slow}> + 1/2 e^{-i(w + slow)} V^dag|alpha e^{-i slow}>
  // with w = g sqrt(nbar) t / 2, slow = g t / (2 sqrt(nbar)); V^dag|beta> ~ |sqrt(nbar+1) e^{i arg beta}>.
  const double slow = g * t / (2.0 * alpha);
  const double w = 0.5 * g * alpha * t;
  const double grown = std::sqrt(nbar + 1.0);
  const auto plus = coherent_amplitudes(grown, slow, cutoff + 1);
  const auto minus = coherent_amplitudes(grown, -slow, cutoff + 1);
  const cplx wp = -0.5 * std::polar(1.0, w + slow);
  const cplx wm = 0.5 * std::polar(1.0, -(w + slow));
  out.two_branch.resize(cutoff + 2);
  for (std::size_t k = 0; k < cutoff + 2; ++k) out.two_branch[k] = wp * plus[k] + wm * minus[k];

  cplx inner{};
  for (std::size_t k = 0; k < cutoff + 2; ++k) inner += std::conj(out.exact[k]) * out.two_branch[k];
  const double denom = std::sqrt(out.decay_probability * squared_norm(out.two_branch));
  out.overlap = denom > 0.0 ? std::abs(inner) / denom : 0.0;
  return out;
}

PhotonAdderResult photon_adder_check(double nbar, double phi, std::size_t cutoff) {
  if (!(nbar >= 1.0)) throw std::invalid_argument("nbar must be >= 1");
  if (cutoff == 0) cutoff = fock_cutoff(nbar);
  const auto c = coherent_amplitudes(std::sqrt(nbar), phi, cutoff);
  // shifted[k] = c[k-1]
  std::vector<cplx> shifted(cutoff + 2);
  for (std::size_t n = 0; n <= cutoff; ++n) shifted[n + 1] = c[n];
  const double norm = squared_norm(shifted);

  PhotonAdderResult out;
  for (std::size_t k = 0; k < shifted.size(); ++k) {
    out.number += static_cast<double>(k) * std::norm(shifted[k]);
    if (k + 1 < shifted.size())
      out.amplitude += std::conj(shifted[k]) * shifted[k + 1] * std::sqrt(static_cast<double>(k) + 1.0);
  }
  out.amplitude /= norm;
  out.number /= norm;
  return out;
}

namespace {

struct Polar {
  double phi, zeta, eta;
};

Polar polar_rhs(const Polar& y, double s, double n_total, double g) {
  const double r2 = n_total - s * std::sin(y.eta);
  if (!(r2 > 0.0)) throw SingularAmplitude("semiclassical amplitude r^2 reached zero");
  const double r = std::sqrt(r2);
  const double c = std::cos(y.phi - y.zeta);
  return {-(g * s / r) * std::cos(y.eta) * c, 2.0 * g * r * std::tan(y.eta) * c,
          2.0 * g * r * std::sin(y.phi - y.zeta)};
}

Polar axpy(const Polar& y, double h, const Polar& k) {
  return {y.phi + h * k.phi, y.zeta + h * k.zeta, y.eta + h * k.eta};
}

}  // namespace

SemiclassicalTrajectory semiclassical_evolve(const SemiclassicalParams& params, double dt,
                                             std::size_t steps) {
  if (!(params.nbar > 0.0)) throw std::invalid_argument("nbar must be > 0");
  SemiclassicalTrajectory out;
  out.params = params;
  out.s = std::abs(params.m);
  out.n_total = params.nbar;  // eta(0) = 0
  const double g = params.g;

  // |m>_x has <J_-> = m: negative m is a zero-length-preserving phase flip.
  Polar y{0.0, params.m < 0.0 ? kPi : 0.0, 0.0};
  auto push = [&](double t) {
    out.t.push_back(t);
    out.r.push_back(std::sqrt(out.n_total - out.s * std::sin(y.eta)));
    out.phi.push_back(y.phi);
    out.zeta.push_back(y.zeta);
    out.eta.push_back(y.eta);
  };
  push(0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    const Polar k1 = polar_rhs(y, out.s, out.n_total, g);
    const Polar k2 = polar_rhs(axpy(y, 0.5 * dt, k1), out.s, out.n_total, g);
    const Polar k3 = polar_rhs(axpy(y, 0.5 * dt, k2), out.s, out.n_total, g);
    const Polar k4 = polar_rhs(axpy(y, dt, k3), out.s, out.n_total, g);
    y.phi += dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
    y.zeta += dt / 6.0 * (k1.zeta + 2.0 * k2.zeta + 2.0 * k3.zeta + k4.zeta);
    y.eta += dt / 6.0 * (k1.eta + 2.0 * k2.eta + 2.0 * k3.eta + k4.eta);
    if (!(out.n_total - out.s * std::sin(y.eta) > 0.0))
      throw SingularAmplitude("semiclassical amplitude r^2 reached zero");
    push(static_cast<double>(k + 1) * dt);
  }
  return out;
}

namespace {

MeanFieldPoint meanfield_rhs(const MeanFieldPoint& y, double g) {
  const cplx i(0.0, 1.0);
  MeanFieldPoint d;
  d.a = -i * g * y.jm;
  d.jm = 2.0 * i * g * y.jz * y.a;
  d.jz = (-i * g * (std::conj(y.jm) * y.a - std::conj(y.a) * y.jm)).real();
  return d;
}

MeanFieldPoint axpy(const MeanFieldPoint& y, double h, const MeanFieldPoint& k) {
  return {y.a + h * k.a, y.jm + h * k.jm, y.jz + h * k.jz};
}

}  // namespace

std::vector<MeanFieldPoint> meanfield_evolve(const SemiclassicalParams& params, double dt,
                                             std::size_t steps) {
  std::vector<MeanFieldPoint> out;
  out.reserve(steps + 1);
  MeanFieldPoint y{cplx(std::sqrt(params.nbar), 0.0), cplx(params.m, 0.0), 0.0};
  out.push_back(y);
  for (std::size_t k = 0; k < steps; ++k) {
    const MeanFieldPoint k1 = meanfield_rhs(y, params.g);
    const MeanFieldPoint k2 = meanfield_rhs(axpy(y, 0.5 * dt, k1), params.g);
    const MeanFieldPoint k3 = meanfield_rhs(axpy(y, 0.5 * dt, k2), params.g);
    const MeanFieldPoint k4 = meanfield_rhs(axpy(y, dt, k3), params.g);
    y.a += dt / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    y.jm += dt / 6.0 * (k1.jm + 2.0 * k2.jm + 2.0 * k3.jm + k4.jm);
    y.jz += dt / 6.0 * (k1.jz + 2.0 * k2.jz + 2.0 * k3.jz + k4.jz);
    out.push_back(y);
  }
  return out;
}

double meanfield_invariant_drift(const SemiclassicalParams& params, double dt, std::size_t steps) {
  const auto traj = meanfield_evolve(params, dt, steps);
  auto bloch = [](const MeanFieldPoint& p) { return std::sqrt(std::norm(p.jm) + p.jz * p.jz); };
  auto total = [](const MeanFieldPoint& p) { return std::norm(p.a) + p.jz; };
  const double s0 = bloch(traj.front());
  const double n0 = total(traj.front());
  double drift = 0.0;
  for (const auto& p : traj) {
    if (s0 > 0.0) drift = std::max(drift, std::abs(bloch(p) - s0) / s0);
    drift = std::max(drift, std::abs(total(p) - n0) / n0);
  }
  return drift;
}

LinearizedPhase linearized_reference(double m, double nbar, double g, double t) {
  const double root = std::sqrt(nbar);
  const double sn = std::sin(g * root * t);
  return {-g * m * t / root, -(m / nbar) * sn * sn};
}

PhaseSpread phase_spread_estimate(int atom_count, double n_in, double gain) {
  if (!(n_in > 0.0)) throw std::invalid_argument("n_in must be > 0");
  const double n = atom_count;
  PhaseSpread out;
  out.delta_phi = std::sqrt(n) * kPi / (4.0 * n_in);
  // added noise delta_phi * sqrt(G N_in) on top of the coherent 1/2, in quadrature
  const double added = out.delta_phi * std::sqrt(gain * n_in);
  out.delta_y = std::sqrt(0.25 + added * added);
  return out;
}

double single_atom_regression(double t1, double t2, double gamma) {
  if (t1 < 0.0 || t2 < t1) throw std::invalid_argument("need 0 <= t1 <= t2");
  return std::exp(-gamma * t1) * std::exp(-0.5 * gamma * (t2 - t1));
}


namespace {

using Dense = std::vector<cplx>;

Dense dense_mul(const Dense& a, const Dense& b, std::size_t n) {
  Dense out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
    }
  return out;
}

Dense dense_adjoint(const Dense& a, std::size_t n) {
  Dense out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a[i * n + j]);
  return out;
}

double binomial(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

// <m_b, n_c| U |k_b, l_c> for U b^dag U^dag = t b^dag + r c^dag,
// U c^dag U^dag = t c^dag - r b^dag.
double splitter_element(int m, int k, int l, double t, double r) {
  double amp = 0.0;
  for (int a = 0; a <= k; ++a) {
    const int b = m - a;
    if (b < 0 || b > l) continue;
    amp += binomial(k, a) * std::pow(t, a) * std::pow(r, k - a) * binomial(l, b) * std::pow(-r, b) *
           std::pow(t, l - b);
  }
  const int n = k + l - m;
  return amp * std::exp(0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(l + 1.0)));
}

}  // namespace

TimeBinMoments time_bin_single_atom(double gamma, double duration, double area, std::size_t bins,
                                    std::size_t cutoff) {
  if (!(gamma > 0.0) || !(duration > 0.0) || bins == 0 || cutoff < 2)
    throw std::invalid_argument("time_bin_single_atom: bad parameters");
  const double dt = duration / static_cast<double>(bins);
  const int levels = static_cast<int>(cutoff);
  const std::size_t dim = 2 * cutoff;
  auto index = [&](int atom, int n) { return static_cast<std::size_t>(atom) * cutoff + n; };

  // Atom maps in the (g, e) basis: drive rotation, forward exchange with an
  // empty bin (branch with 0 or 1 photon), backward amplitude damping.
  const double alpha = 0.5 * (area / duration) * dt;
  const double ud[2][2] = {{std::cos(alpha), -std::sin(alpha)}, {std::sin(alpha), std::cos(alpha)}};
  const double mix = std::sqrt(0.5 * gamma * dt);
  const double fwd[2][2][2] = {{{1.0, 0.0}, {0.0, std::cos(mix)}}, {{0.0, std::sin(mix)}, {0.0, 0.0}}};
  const double p = 1.0 - std::exp(-0.5 * gamma * dt);
  const double bwd[2][2][2] = {{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}}, {{0.0, std::sqrt(p)}, {0.0, 0.0}}};

  double atom_ops[2][2][2][2];  // [backward outcome][bin photons][row][col]
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          double v = 0.0;
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) v += bwd[j][r][x] * fwd[k][x][y] * ud[y][c];
          atom_ops[j][k][r][c] = v;
        }

  Dense rho(dim * dim);
  rho[index(1, 0) * dim + index(1, 0)] = 1.0;

  for (std::size_t step = 0; step < bins; ++step) {
    const double r = std::sqrt(1.0 / static_cast<double>(step + 1));
    const double t = std::sqrt(1.0 - r * r);
    Dense next(dim * dim);
    for (int j = 0; j < 2; ++j) {
      for (int m = 0; m <= levels; ++m) {
        Dense kraus(dim * dim);
        bool any = false;
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < levels; ++l) {
            const int n = k + l - m;
            if (n < 0 || n >= levels) continue;
            const double bs = splitter_element(m, k, l, t, r);
            if (bs == 0.0) continue;
            for (int ar = 0; ar < 2; ++ar)
              for (int ac = 0; ac < 2; ++ac) {
                const double v = atom_ops[j][k][ar][ac] * bs;
                if (v == 0.0) continue;
                kraus[index(ar, n) * dim + index(ac, l)] += v;
                any = true;
              }
          }
        if (!any) continue;
        const Dense term = dense_mul(dense_mul(kraus, rho, dim), dense_adjoint(kraus, dim), dim);
        for (std::size_t q = 0; q < term.size(); ++q) next[q] += term[q];
      }
    }
    rho = std::move(next);
  }

  TimeBinMoments out;
  cplx c1{}, cdc{}, cc{};
  for (int a = 0; a < 2; ++a) {
    for (int n = 1; n < levels; ++n) {
      c1 += std::sqrt(static_cast<double>(n)) * rho[index(a, n) * dim + index(a, n - 1)];
      cdc += static_cast<double>(n) * rho[index(a, n) * dim + index(a, n)];
    }
    for (int n = 2; n < levels; ++n)
      cc += std::sqrt(static_cast<double>(n) * (n - 1)) * rho[index(a, n) * dim + index(a, n - 2)];
    out.truncation += rho[index(a, levels - 1) * dim + index(a, levels - 1)].real();
  }
  out.scattered = c1;
  out.cdag_c = cdc.real() - std::norm(c1);
  out.c_c = cc - c1 * c1;
  out.dx = std::sqrt((1.0 + 2.0 * out.cdag_c + 2.0 * out.c_c.real()) / 4.0);
  out.dy = std::sqrt((1.0 + 2.0 * out.cdag_c - 2.0 * out.c_c.real()) / 4.0);
  return out;
}

}  // namespace superfluence::oracles
