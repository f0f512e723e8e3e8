#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace cli {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_series_csv(std::ostream& os, const superfluence::TimeSeries& se,
                      const std::string& manifest_name) {
  os << "# manifest=" << manifest_name << " schema=" << kSchemaVersion << '\n';
  os << "t,re_drive,im_drive,re_jm,im_jm,jz,jpjm,re_a_out,im_a_out,a_out_number,"
        "a_out_coherent_number,b_out_number\n";
  for (std::size_t k = 0; k < se.size(); ++k) {
    os << number(se.t[k]) << ',' << number(se.drive[k].real()) << ',' << number(se.drive[k].imag())
       << ',' << number(se.jm[k].real()) << ',' << number(se.jm[k].imag()) << ','
       << number(se.jz[k]) << ',' << number(se.jpjm[k]) << ',' << number(se.a_out[k].real()) << ','
       << number(se.a_out[k].imag()) << ',' << number(se.a_out_number[k]) << ','
       << number(std::norm(se.a_out[k])) << ',' << number(se.b_out_number[k]) << '\n';
  }
}

namespace {

nlohmann::ordered_json pair(superfluence::cplx z) { return {z.real(), z.imag()}; }

nlohmann::ordered_json maybe(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

nlohmann::ordered_json report_json(const superfluence::AmplifierReport& r) {
  nlohmann::ordered_json j;
  j["photon_numbers"] = {{"n_in", r.numbers.n_in},
                         {"n_a", r.numbers.n_a},
                         {"n_ac", r.numbers.n_ac},
                         {"n_b", r.numbers.n_b},
                         {"n_bc", r.numbers.n_bc}};
  j["probabilities"] = {
      {"p_a", r.probabilities.p_a}, {"p_ac", r.probabilities.p_ac}, {"p_b", r.probabilities.p_b}};
  j["conservation_residual"] = r.conservation_residual;
  j["amplitudes"] = {{"c_in", pair(r.amplitudes.c_in)}, {"c_out", pair(r.amplitudes.c_out)}};
  j["gain"] = maybe(r.gain.gain);
  if (r.quadratures) {
    const auto& q = *r.quadratures;
    j["quadratures"] = {{"cdag_c", pair(q.cdag_c)},
                        {"c_c", pair(q.c_c)},
                        {"cdag_cdag", pair(q.cdag_cdag)},
                        {"dx", q.dx},
                        {"dy", q.dy},
                        {"r_sn", maybe(r.gain.r_sn)}};
  }
  j["grid"] = {{"dt", r.dt}, {"steps", r.steps}, {"t_end", r.t_end}};
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << text;
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::ordered_json Manifest::to_json() const {
  const std::time_t t = std::chrono::system_clock::to_time_t(started);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["version"] = SUPERFLUENCE_VERSION;
  j["parameters"] = parameters;
  j["outputs"] = outputs;
  j["started_at"] = stamp;
  j["wall_clock_seconds"] = wall_seconds;
  return j;
}

}  // namespace cli
