#pragma once

#include <string>
#include <vector>

#include "params.hpp"

namespace cli {

int run_command(const Physics& flags);

struct SweepFlags {
  std::string axis = "tp";
  double from = 0.01;
  double to = 100.0;
  int points = 30;
  std::string spacing = "log";
  std::optional<double> n_in;
  bool force = false;
};

int sweep_command(const Physics& flags, const SweepFlags& sweep);

struct OracleFlags {
  std::string which;
  bool atoms_set = false;
  bool tp_set = false;
  std::optional<double> n_in;
  std::optional<double> nbar;
};

int oracle_command(const Physics& flags, const OracleFlags& oracle);

}  // namespace cli
