#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "commands.hpp"
#include "output.hpp"
#include "superfluence/errors.hpp"
#include "superfluence/parallel.hpp"

namespace cli {

namespace {

const char* const kHeader =
    "index,axis,value,atoms,shape,tp,area_pi,theta,dt,steps,t_end,n_in,n_a,n_ac,n_b,n_bc,p_a,p_ac,"
    "p_b,residual,gain,dx,dy,r_sn,status";

std::vector<double> axis_values(const SweepFlags& s) {
  if (s.points < 1) throw std::invalid_argument("--points must be >= 1");
  if (s.spacing != "log" && s.spacing != "lin")
    throw std::invalid_argument("--spacing must be log or lin");
  if (s.points > 1 && !(s.from < s.to)) throw std::invalid_argument("sweep range must increase");
  if (s.spacing == "log" && !(s.from > 0.0)) throw std::invalid_argument("log spacing needs a positive range");
  std::vector<double> v;
  for (int k = 0; k < s.points; ++k) {
    const double u = s.points == 1 ? 0.0 : static_cast<double>(k) / (s.points - 1);
    v.push_back(s.spacing == "log" ? s.from * std::pow(s.to / s.from, u) : s.from + (s.to - s.from) * u);
  }
  if (s.axis == "atoms") {
    std::vector<double> ints;
    for (double x : v) {
      const double r = std::round(x);
      if (r < 1.0) throw std::invalid_argument("atom counts must be >= 1");
      if (ints.empty() || r != ints.back()) ints.push_back(r);
    }
    v = ints;
  }
  return v;
}

Physics point_flags(const Physics& base, const SweepFlags& s, double value) {
  Physics p = base;
  if (s.axis == "tp") {
    p.tp = value;
  } else if (s.axis == "area") {
    p.area_pi = value;
  } else if (s.axis == "atoms") {
    p.atoms = static_cast<int>(value);
  } else {
    throw std::invalid_argument("--axis must be tp, area or atoms");
  }
  if (s.n_in) {
    if (s.axis == "tp") throw std::invalid_argument("--nin fixes t_p and cannot be combined with a tp sweep");
    p.tp = superfluence::duration_for_photons(superfluence::parse_pulse_shape(p.shape),
                                              p.area_pi * superfluence::kPi, *s.n_in, p.gamma);
  }
  p.dt.reset();
  return p;
}

std::string row(std::size_t index, const SweepFlags& s, double value, const Physics& p,
                const superfluence::AmplifierReport* r, const std::string& status) {
  const double nan = std::nan("");
  std::ostringstream os;
  os << index << ',' << s.axis << ',' << number(value) << ',' << p.atoms << ','
     << superfluence::to_string(superfluence::parse_pulse_shape(p.shape)) << ',' << number(p.tp)
     << ',' << number(p.area_pi) << ',' << number(p.theta) << ',';
  if (r) {
    const auto& n = r->numbers;
    const auto& pr = r->probabilities;
    os << number(r->dt) << ',' << r->steps << ',' << number(r->t_end) << ',' << number(n.n_in) << ','
       << number(n.n_a) << ',' << number(n.n_ac) << ',' << number(n.n_b) << ',' << number(n.n_bc)
       << ',' << number(pr.p_a) << ',' << number(pr.p_ac) << ',' << number(pr.p_b) << ','
       << number(r->conservation_residual) << ',' << number(r->gain.gain.value_or(nan)) << ','
       << number(r->quadratures ? r->quadratures->dx : nan) << ','
       << number(r->quadratures ? r->quadratures->dy : nan) << ','
       << number(r->gain.r_sn.value_or(nan));
  } else {
    os << "nan,0,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan,nan";
  }
  os << ',' << status << '\n';
  return os.str();
}

// Number of complete data rows already in the file; trims a torn last line.
std::size_t completed_rows(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  const auto cut = text.find_last_of('\n');
  const std::size_t keep = cut == std::string::npos ? 0 : cut + 1;
  if (keep != text.size()) std::filesystem::resize_file(path, keep);
  std::size_t lines = 0;
  for (std::size_t k = 0; k < keep; ++k) lines += text[k] == '\n';
  return lines >= 2 ? lines - 2 : 0;
}

}  // namespace

int sweep_command(const Physics& flags, const SweepFlags& s) {
  const auto values = axis_values(s);
  std::vector<Physics> points;
  for (double v : values) {
    points.push_back(point_flags(flags, s, v));
    points.back().system();
    points.back().pulse();
  }

  nlohmann::ordered_json params = flags.to_json();
  params["sweep"] = {{"axis", s.axis},       {"from", s.from},
                     {"to", s.to},           {"points", s.points},
                     {"spacing", s.spacing}, {"nin", s.n_in ? nlohmann::ordered_json(*s.n_in) : nullptr}};

  const std::filesystem::path dir(flags.out);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / "sweep.csv";
  const auto manifest_path = dir / "manifest.json";

  std::size_t done = 0;
  if (std::filesystem::exists(csv_path) && !s.force) {
    nlohmann::ordered_json previous;
    try {
      std::ifstream is(manifest_path);
      previous = nlohmann::ordered_json::parse(is);
    } catch (const std::exception&) {
      std::cerr << "error: " << csv_path.string() << " exists without a readable manifest; use --force\n";
      return kBadFlags;
    }
    if (previous.value("parameters", nlohmann::ordered_json{}) != params) {
      std::cerr << "error: existing sweep in " << dir.string()
                << " used different parameters; use --force to overwrite\n";
      return kBadFlags;
    }
    done = std::min(completed_rows(csv_path), values.size());
    if (done > 0) std::cerr << "resuming after " << done << " completed rows\n";
  }

  Manifest manifest;
  manifest.command = "sweep";
  manifest.parameters = params;
  manifest.outputs = {{"sweep", "sweep.csv"}};
  manifest.started = std::chrono::system_clock::now();
  const auto clock0 = std::chrono::steady_clock::now();
  write_file(manifest_path, manifest.to_json().dump(2) + "\n");

  std::ofstream csv;
  if (done == 0) {
    csv.open(csv_path, std::ios::binary | std::ios::trunc);
    csv << "# manifest=manifest.json schema=" << kSchemaVersion << '\n' << kHeader << '\n';
  } else {
    csv.open(csv_path, std::ios::binary | std::ios::app);
  }
  csv.flush();
  if (!csv) throw std::runtime_error("cannot write " + csv_path.string());

  const unsigned workers = flags.threads ? flags.threads : superfluence::worker_count();
  const unsigned inner = workers > 1 ? 1u : 0u;
  std::mutex lock;
  std::vector<std::optional<std::string>> ready(values.size());
  std::size_t next = done;
  bool failed = false;

  superfluence::parallel_for(values.size() - done, workers, [&](std::size_t k) {
    const std::size_t i = done + k;
    const Physics& p = points[i];
    std::string line;
    try {
      const auto attempt = simulate_with_retry(p.system(), p.pulse(), p, inner);
      line = row(i, s, values[i], p, &attempt.sim.report, "ok");
    } catch (const superfluence::StepTooLarge&) {
      line = row(i, s, values[i], p, nullptr, "step_too_large");
      std::lock_guard g(lock);
      failed = true;
    } catch (const superfluence::PhaseLeak&) {
      line = row(i, s, values[i], p, nullptr, "phase_leak");
    }
    std::lock_guard g(lock);
    ready[i] = std::move(line);
    while (next < ready.size() && ready[next]) {
      csv << *ready[next];
      csv.flush();
      ready[next].reset();
      ++next;
    }
  });

  manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - clock0).count();
  write_file(manifest_path, manifest.to_json().dump(2) + "\n");
  std::printf("wrote %zu rows to %s\n", values.size(), csv_path.string().c_str());
  return failed ? kStepTooLarge : kOk;
}

}  // namespace cli
