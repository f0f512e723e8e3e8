#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"
#include "superfluence/oracles.hpp"
#include "superfluence/regression.hpp"

namespace cli {

namespace {

using superfluence::kPi;
namespace so = superfluence::oracles;
using json = nlohmann::ordered_json;

enum class Kind { Absolute, Relative, AtMost, AtLeast };

struct Check {
  std::string name;
  double engine;
  double oracle;
  double tolerance;
  Kind kind;
  json info = json::object();

  bool pass() const {
    const double dev = std::abs(engine - oracle);
    switch (kind) {
      case Kind::Absolute: return dev <= tolerance;
      case Kind::Relative: return dev <= tolerance * std::abs(oracle);
      case Kind::AtMost: return engine <= tolerance;
      case Kind::AtLeast: return engine >= tolerance;
    }
    return false;
  }

  json to_json() const {
    static const char* kinds[] = {"absolute", "relative", "at_most", "at_least"};
    const double dev = std::abs(engine - oracle);
    json j;
    j["name"] = name;
    j["engine"] = engine;
    j["oracle"] = oracle;
    j["abs_deviation"] = dev;
    j["rel_deviation"] = oracle != 0.0 ? json(dev / std::abs(oracle)) : json(nullptr);
    j["tolerance"] = tolerance;
    j["tolerance_kind"] = kinds[static_cast<int>(kind)];
    j["pass"] = pass();
    if (!info.empty()) j["info"] = info;
    return j;
  }
};

superfluence::AmplifierReport rect_pi(const Physics& flags, int atoms, double tp, bool quadratures) {
  Physics p = flags;
  p.atoms = atoms;
  p.tp = tp;
  p.shape = "rect";
  p.area_pi = 1.0;
  p.quadratures = quadratures;
  return simulate_with_retry(p.system(), p.pulse(), p, p.threads).sim.report;
}

std::vector<Check> short_pulse(const Physics& f, const OracleFlags& o) {
  const int n = o.atoms_set ? f.atoms : 10;
  const double tp = o.tp_set ? f.tp : 0.01;
  Physics p = f;
  p.atoms = n;
  p.tp = tp;
  p.shape = "rect";
  p.area_pi = 1.0;
  p.quadratures = false;
  const auto sim = simulate_with_retry(p.system(), p.pulse(), p, p.threads).sim;
  const auto& r = sim.report;
  const auto ref = so::short_pulse_reference(p.system(), p.pulse());
  const auto& se = sim.evolution.series;
  double worst = 0.0;
  for (std::size_t k = 0; k <= se.pulse_end_index; ++k)
    worst = std::max(worst, std::abs(se.jm[k] - ref.jm(se.t[k])));
  return {
      {"p_a", r.probabilities.p_a, 1.0, 0.05, Kind::Absolute},
      {"p_ac", r.probabilities.p_ac, 1.0, 0.05, Kind::Absolute},
      {"p_b", r.probabilities.p_b, 0.0, 0.03, Kind::AtMost},
      {"gain", r.gain.gain.value_or(std::nan("")), 1.0 + 2.0 * n * f.gamma * tp / (kPi * kPi), 0.005,
       Kind::Relative},
      {"max_jm_deviation_over_n", worst / n, 0.0, 0.03, Kind::AtMost},
  };
}

std::vector<Check> long_pulse(const Physics& f, const OracleFlags& o) {
  const int n = o.atoms_set ? f.atoms : 10;
  const double tp = o.tp_set ? f.tp : 100.0;
  const auto r = rect_pi(f, n, tp, false);
  Physics p = f;
  p.atoms = n;
  p.tp = tp;
  p.shape = "rect";
  p.area_pi = 1.0;
  const auto ref = so::long_pulse_reference(p.system(), p.pulse());
  return {{"p_a", r.probabilities.p_a, ref.p_a, 0.02, Kind::Absolute},
          {"p_b", r.probabilities.p_b, ref.p_b, 0.02, Kind::Absolute},
          {"p_ac", r.probabilities.p_ac, ref.p_ac, 0.02, Kind::Absolute}};
}

std::vector<Check> single_atom(const Physics& f, const OracleFlags& o) {
  const double span = o.tp_set ? f.tp : 2.0;
  const double dt = 1e-3;
  const superfluence::SystemConfig c{1, f.gamma, 0.0};
  const superfluence::PulseSpec p{superfluence::PulseShape::Rectangular,
                                  std::round(span / dt) * dt, 0.0, 0.0};
  superfluence::EvolveOptions opt;
  opt.keep_pulse_states = true;
  const auto ev = superfluence::evolve(c, p, {dt, p.duration}, opt);
  const auto grid = superfluence::assemble_two_time(c, p, ev, ev.series.pulse_end_index, f.threads);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i; j < grid.size(); ++j)
      worst = std::max(worst, std::abs(grid.pm(i, j) - so::single_atom_regression(i * dt, j * dt, f.gamma)));
  return {{"max_two_time_deviation", worst, 0.0, 1e-6, Kind::AtMost}};
}

std::vector<Check> pacs(const Physics& f, const OracleFlags& o) {
  const double nin = o.n_in.value_or(100.0);
  const int top = o.atoms_set ? f.atoms : 10;
  std::vector<Check> out;
  for (int n = 1; n <= top; ++n) {
    const double closed = so::pacs_coherent_number(nin, n);
    out.push_back({"closed_vs_fock_n" + std::to_string(n), closed,
                   so::pacs_coherent_number_fock(nin, n), 1e-8, Kind::Relative});
  }
  for (int n : {1, 5, 10}) {
    if (n > top) continue;
    const double excess = so::pacs_coherent_number(nin, n) - (nin + n);
    out.push_back({"excess_coherence_n" + std::to_string(n), excess, double(n), 0.05, Kind::Relative});
  }
  return out;
}

std::vector<Check> jc(const Physics&, const OracleFlags& o) {
  const double nbar = o.nbar.value_or(400.0);
  const auto st = so::jc_conditional_state(nbar, 1.0, so::jc_pi_time(nbar, 1.0));
  return {{"decay_probability_at_t_pi", st.decay_probability, 1.0, 0.99, Kind::AtLeast},
          {"two_branch_overlap", st.overlap, 1.0, 0.99, Kind::AtLeast}};
}

std::vector<Check> semiclassical(const Physics& f, const OracleFlags& o) {
  const double nbar = o.nbar.value_or(1000.0);
  const int n = o.atoms_set ? f.atoms : 10;
  const so::SemiclassicalParams params{n / 4.0, nbar, 1.0};
  const double t_pi = so::jc_pi_time(nbar, 1.0);
  const double drift = so::meanfield_invariant_drift(params, t_pi / 4000, 4000);

  const so::SemiclassicalParams lin{0.5, 1e4, 1.0};
  const double t_end = (kPi / 2.0) / std::sqrt(lin.nbar);
  const auto traj = so::semiclassical_evolve(lin, t_end / 2000, 2000);
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.t.size(); ++k) {
    const auto ref = so::linearized_reference(lin.m, lin.nbar, lin.g, traj.t[k]);
    worst = std::max(worst, std::abs(traj.phi[k] / ref.phi - 1.0));
  }
  return {{"invariant_drift", drift, 0.0, 1e-6, Kind::AtMost},
          {"linearized_phase_rel_error", worst, 0.0, 0.05, Kind::AtMost}};
}

std::vector<Check> delta_y(const Physics& f, const OracleFlags& o) {
  const int n = o.atoms_set ? f.atoms : 10;
  std::vector<double> durations = o.tp_set ? std::vector<double>{f.tp} : std::vector<double>{0.1, 0.3};
  std::vector<Check> out;
  for (double tp : durations) {
    const auto r = rect_pi(f, n, tp, true);
    const auto est = so::phase_spread_estimate(n, r.numbers.n_in, r.gain.gain.value_or(1.0));
    Check c{"delta_y_tp" + std::to_string(tp), r.quadratures->dy, est.delta_y, 0.2, Kind::Relative};
    c.info = {{"dx", r.quadratures->dx},
              {"gain", r.gain.gain.value_or(std::nan(""))},
              {"r_sn", r.gain.r_sn.value_or(std::nan(""))}};
    out.push_back(c);
  }
  return out;
}

std::vector<Check> time_bin(const Physics& f, const OracleFlags& o) {
  const double tp = o.tp_set ? f.tp : 0.3;
  Physics p = f;
  p.atoms = 1;
  p.tp = tp;
  p.shape = "rect";
  p.quadratures = true;
  const auto r = simulate_with_retry(p.system(), p.pulse(), p, p.threads).sim.report;
  const auto ref = so::time_bin_single_atom(f.gamma, tp, p.area_pi * kPi, std::max<std::size_t>(r.steps, 2000));
  const auto& q = *r.quadratures;
  return {{"cdag_c", q.cdag_c.real(), ref.cdag_c, 1e-3, Kind::Absolute},
          {"c_c", q.c_c.real(), ref.c_c.real(), 1e-3, Kind::Absolute},
          {"dx", q.dx, ref.dx, 1e-3, Kind::Absolute},
          {"dy", q.dy, ref.dy, 1e-3, Kind::Absolute}};
}

}  // namespace

int oracle_command(const Physics& flags, const OracleFlags& o) {
  std::vector<Check> checks;
  if (o.which == "short-pulse") checks = short_pulse(flags, o);
  else if (o.which == "long-pulse") checks = long_pulse(flags, o);
  else if (o.which == "single-atom") checks = single_atom(flags, o);
  else if (o.which == "pacs") checks = pacs(flags, o);
  else if (o.which == "jc") checks = jc(flags, o);
  else if (o.which == "semiclassical") checks = semiclassical(flags, o);
  else if (o.which == "delta-y") checks = delta_y(flags, o);
  else if (o.which == "time-bin") checks = time_bin(flags, o);
  else throw std::invalid_argument("unknown oracle '" + o.which + "'");

  json out;
  out["which"] = o.which;
  bool all = true;
  out["checks"] = json::array();
  for (const auto& c : checks) {
    out["checks"].push_back(c.to_json());
    all = all && c.pass();
  }
  out["pass"] = all;
  std::cout << out.dump(2) << '\n';
  return all ? kOk : kOracleFailed;
}

}  // namespace cli
