#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "superfluence/metrics.hpp"
#include "superfluence/model.hpp"

namespace cli {

enum Exit { kOk = 0, kBadFlags = 2, kStepTooLarge = 3, kOracleFailed = 4 };

// Flags shared by every subcommand. Area is given in units of pi.
struct Physics {
  int atoms = 10;
  double gamma = 1.0;
  double detuning = 0.0;
  std::string shape = "rect";
  double tp = 0.2;
  double area_pi = 1.0;
  double theta = 0.0;
  int refine = 1;
  std::optional<double> dt;
  bool quadratures = false;
  unsigned threads = 0;
  std::string out = ".";

  superfluence::SystemConfig system() const;
  superfluence::PulseSpec pulse() const;
  nlohmann::ordered_json to_json() const;
};

struct Attempt {
  superfluence::Simulation sim;
  int refine_used = 1;
  std::optional<double> dt_used;
};

// Runs one point; on StepTooLarge halves the step once and retries.
// A second failure propagates.
Attempt simulate_with_retry(const superfluence::SystemConfig& system,
                            const superfluence::PulseSpec& pulse, const Physics& flags,
                            unsigned threads);

}  // namespace cli
