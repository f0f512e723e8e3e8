#include <cstdio>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "superfluence/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Superradiant stimulated-emission simulator"};
  app.set_version_flag("--version", SUPERFLUENCE_VERSION);
  app.set_config("--config", "", "flat key=value file mirroring the long flags; flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  cli::Physics flags;
  auto* atoms = app.add_option("--atoms", flags.atoms, "number of atoms N")->check(CLI::PositiveNumber);
  app.add_option("--gamma", flags.gamma, "total decay rate into the waveguide")->check(CLI::PositiveNumber);
  app.add_option("--detuning", flags.detuning, "atom minus carrier frequency");
  app.add_option("--shape", flags.shape, "pulse shape")->check(CLI::IsMember({"rect", "rectangular", "sine", "sin"}));
  auto* tp = app.add_option("--tp", flags.tp, "pulse duration t_p")->check(CLI::PositiveNumber);
  app.add_option("--area-pi", flags.area_pi, "pulse area in units of pi")->check(CLI::NonNegativeNumber);
  app.add_option("--theta", flags.theta, "input pulse phase (rad)");
  app.add_option("--refine", flags.refine, "divide the default step by this factor")->check(CLI::PositiveNumber);
  app.add_option("--dt", flags.dt, "explicit step; must divide t_p")->check(CLI::PositiveNumber);
  app.add_flag("--quadratures", flags.quadratures, "run the two-time engine for dX, dY, R_SN");
  app.add_option("--threads", flags.threads, "worker threads (default SUPERFLUENCE_THREADS or all cores)");
  app.add_option("--out", flags.out, "output directory");

  auto* run = app.add_subcommand("run", "simulate one parameter point");

  cli::SweepFlags sweep;
  auto* sw = app.add_subcommand("sweep", "scan one parameter, one CSV row per point");
  sw->add_option("--axis", sweep.axis, "tp, area or atoms")->check(CLI::IsMember({"tp", "area", "atoms"}));
  sw->add_option("--from", sweep.from, "first axis value")->required();
  sw->add_option("--to", sweep.to, "last axis value")->required();
  sw->add_option("--points", sweep.points, "number of points")->check(CLI::PositiveNumber);
  sw->add_option("--spacing", sweep.spacing, "log or lin")->check(CLI::IsMember({"log", "lin"}));
  sw->add_option("--nin", sweep.n_in, "hold the input photon number fixed (sets t_p)")->check(CLI::PositiveNumber);
  sw->add_flag("--force", sweep.force, "overwrite an existing sweep instead of resuming");

  cli::OracleFlags oracle;
  auto* orc = app.add_subcommand("oracle", "compare an engine result with an independent reference");
  orc->add_option("which", oracle.which, "which reference")
      ->required()
      ->check(CLI::IsMember({"short-pulse", "long-pulse", "single-atom", "pacs", "jc", "semiclassical",
                             "delta-y", "time-bin"}));
  orc->add_option("--nin", oracle.n_in, "input photon number (pacs)")->check(CLI::PositiveNumber);
  orc->add_option("--nbar", oracle.nbar, "single-mode photon number (jc, semiclassical)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kBadFlags;
  }

  try {
    if (run->parsed()) return cli::run_command(flags);
    if (sw->parsed()) return cli::sweep_command(flags, sweep);
    oracle.atoms_set = atoms->count() > 0;
    oracle.tp_set = tp->count() > 0;
    return cli::oracle_command(flags, oracle);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kBadFlags;
  } catch (const superfluence::StepTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kStepTooLarge;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
