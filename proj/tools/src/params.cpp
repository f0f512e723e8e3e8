#include "params.hpp"

#include "superfluence/errors.hpp"

namespace cli {

superfluence::SystemConfig Physics::system() const {
  superfluence::SystemConfig c{atoms, gamma, detuning};
  c.validate();
  return c;
}

superfluence::PulseSpec Physics::pulse() const {
  superfluence::PulseSpec p{superfluence::parse_pulse_shape(shape), tp, area_pi * superfluence::kPi,
                            theta};
  p.validate();
  return p;
}

nlohmann::ordered_json Physics::to_json() const {
  nlohmann::ordered_json j;
  j["atoms"] = atoms;
  j["gamma"] = gamma;
  j["detuning"] = detuning;
  j["shape"] = std::string(superfluence::to_string(superfluence::parse_pulse_shape(shape)));
  j["tp"] = tp;
  j["area_pi"] = area_pi;
  j["theta"] = theta;
  j["refine"] = refine;
  j["dt"] = dt ? nlohmann::ordered_json(*dt) : nlohmann::ordered_json(nullptr);
  j["quadratures"] = quadratures;
  return j;
}

Attempt simulate_with_retry(const superfluence::SystemConfig& system,
                            const superfluence::PulseSpec& pulse, const Physics& flags,
                            unsigned threads) {
  superfluence::SimulationOptions opt;
  opt.refine = flags.refine;
  opt.dt = flags.dt;
  opt.quadratures = flags.quadratures;
  opt.threads = threads;
  try {
    return {superfluence::simulate(system, pulse, opt), opt.refine, opt.dt};
  } catch (const superfluence::StepTooLarge&) {
    if (opt.dt)
      *opt.dt *= 0.5;
    else
      opt.refine *= 2;
  }
  return {superfluence::simulate(system, pulse, opt), opt.refine, opt.dt};
}

}  // namespace cli
