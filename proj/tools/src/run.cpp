#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "superfluence/errors.hpp"

namespace cli {

int run_command(const Physics& flags) {
  const auto system = flags.system();
  const auto pulse = flags.pulse();
  Manifest manifest;
  manifest.command = "run";
  manifest.started = std::chrono::system_clock::now();
  const auto clock0 = std::chrono::steady_clock::now();

  Attempt attempt;
  try {
    attempt = simulate_with_retry(system, pulse, flags, flags.threads);
  } catch (const superfluence::StepTooLarge& e) {
    std::cerr << "error: " << e.what() << " (after one step halving)\n";
    return kStepTooLarge;
  }
  const auto& report = attempt.sim.report;

  const std::filesystem::path dir(flags.out);
  std::filesystem::create_directories(dir);
  const std::string manifest_name = "manifest.json";

  std::ostringstream csv;
  write_series_csv(csv, attempt.sim.evolution.series, manifest_name);
  write_file(dir / "series.csv", csv.str());

  nlohmann::ordered_json rep;
  rep["manifest"] = manifest_name;
  rep["parameters"] = flags.to_json();
  rep["refine_used"] = attempt.refine_used;
  const auto body = report_json(report);
  for (auto& [k, v] : body.items()) rep[k] = v;
  write_file(dir / "report.json", rep.dump(2) + "\n");

  manifest.parameters = flags.to_json();
  manifest.parameters["refine_used"] = attempt.refine_used;
  manifest.outputs = {{"series", "series.csv"}, {"report", "report.json"}};
  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock0).count();
  write_file(dir / manifest_name, manifest.to_json().dump(2) + "\n");

  const auto& n = report.numbers;
  std::printf("N_in %.6g  N_a %.6g  N_ac %.6g  N_b %.6g  residual %.3g\n", n.n_in, n.n_a, n.n_ac,
              n.n_b, report.conservation_residual);
  if (report.gain.gain) std::printf("G %.6g\n", *report.gain.gain);
  if (report.quadratures)
    std::printf("dX %.6g  dY %.6g  R_SN %.6g\n", report.quadratures->dx, report.quadratures->dy,
                report.gain.r_sn.value_or(std::nan("")));
  std::printf("wrote %s\n", (dir / "report.json").string().c_str());
  return kOk;
}

}  // namespace cli
