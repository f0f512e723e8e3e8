#pragma once

#include <chrono>
#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "superfluence/metrics.hpp"

namespace cli {

inline constexpr int kSchemaVersion = 1;

// Scientific notation, 17 significant digits; nan for missing values.
std::string number(double v);

void write_series_csv(std::ostream& os, const superfluence::TimeSeries& series,
                      const std::string& manifest_name);

nlohmann::ordered_json report_json(const superfluence::AmplifierReport& report);

// Writes text atomically enough for our purposes: temp file, then rename.
void write_file(const std::filesystem::path& path, const std::string& text);

struct Manifest {
  std::string command;
  nlohmann::ordered_json parameters;
  nlohmann::ordered_json outputs;
  std::chrono::system_clock::time_point started;
  double wall_seconds = 0.0;

  nlohmann::ordered_json to_json() const;
};

}  // namespace cli
