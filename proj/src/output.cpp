#include "gch/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gch/errors.hpp"

namespace gch {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

double parse_real(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string timeseries_csv(const TrajectoryRecord& traj) {
  std::string out(kTimeseriesHeader);
  out += '\n';
  for (const auto& r : traj.rows) {
    const double cols[] = {r.t,      r.energy,        r.energy_drift_rel, r.max_abs_u,
                           r.min_ux, r.h_x0,          r.uxx_x0,           r.neumann_res_0,
                           r.neumann_res_1, r.conv_min, r.dt};
    bool first = true;
    for (double c : cols) {
      if (!first) out += ',';
      out += format_real(c);
      first = false;
    }
    out += '\n';
  }
  return out;
}

void write_timeseries(const TrajectoryRecord& traj, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << timeseries_csv(traj);
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<DiagnosticsRow> read_timeseries(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kTimeseriesHeader) {
    throw IoError(path.string() + ": unexpected header");
  }
  std::vector<DiagnosticsRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(parse_real(cell, path, lineno));
    if (v.size() != 11) throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 11 columns");
    DiagnosticsRow r;
    r.t = v[0];
    r.energy = v[1];
    r.energy_drift_rel = v[2];
    r.max_abs_u = v[3];
    r.min_ux = v[4];
    r.h_x0 = v[5];
    r.uxx_x0 = v[6];
    r.neumann_res_0 = v[7];
    r.neumann_res_1 = v[8];
    r.conv_min = v[9];
    r.dt = v[10];
    rows.push_back(r);
  }
  return rows;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inapplicable: return "inapplicable";
  }
  return "?";
}

nlohmann::ordered_json to_json(const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["family"] = to_string(cfg.initial_data.family);
  if (cfg.initial_data.family == Family::CustomSamples) {
    j["samples"] = cfg.initial_data.samples;
  } else {
    j["amplitude"] = cfg.initial_data.amplitude;
  }
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["t_end"] = cfg.t_end;
  j["cfl"] = cfg.cfl;
  j["dt_max"] = cfg.dt_max;
  j["dt_min"] = cfg.dt_min;
  j["blowup_threshold"] = cfg.blowup_threshold;
  j["rhs_form"] = to_string(cfg.rhs_form);
  j["record_stride"] = cfg.record_stride;
  j["x0"] = cfg.x0;
  return j;
}

nlohmann::ordered_json to_json(const BlowupReport& r) {
  nlohmann::ordered_json j;
  j["t_cross"] = r.t_cross;
  j["T_est"] = optional_number(r.t_est);
  j["fit_slope"] = optional_number(r.fit_slope);
  j["fit_samples"] = r.fit_samples;
  j["T0_bound"] = optional_number(r.t0_bound);
  j["h0"] = r.h0;
  j["u0_h1"] = r.u0_h1;
  j["criterion_satisfied"] = r.criterion_satisfied;
  j["hypothesis_maintained"] = r.hypothesis_maintained;
  if (r.bound_respected) {
    j["bound_respected"] = *r.bound_respected;
  } else {
    j["bound_respected"] = "inapplicable";
  }
  return j;
}

nlohmann::ordered_json to_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["schema_version"] = s.schema_version;
  j["config"] = to_json(s.config);
  j["termination"] = to_string(s.termination);
  j["t_final"] = s.t_final;
  j["max_conservation_drift"] = s.max_drift;
  j["sup_bound"] = to_string(s.sup_bound);
  j["agmon_u0"] = to_string(s.agmon_u0);
  j["poincare_u0"] = to_string(s.poincare_u0);
  j["blowup"] = s.blowup ? to_json(*s.blowup) : nlohmann::ordered_json(nullptr);
  j["wall_seconds"] = s.wall_seconds;
  return j;
}

void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_summary(const RunSummary& summary, const std::filesystem::path& path) {
  write_json(to_json(summary), path);
}

}  // namespace gch
