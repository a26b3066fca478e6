#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gch/dynamics.hpp"

namespace gch {

inline constexpr std::string_view kTimeseriesHeader =
    "t,energy,energy_drift_rel,max_abs_u,min_ux,h_x0,uxx_x0,neumann_res_0,neumann_res_1,conv_min,dt";

inline constexpr int kSummarySchemaVersion = 1;

/// Shortest decimal text that parses back to exactly `v`.
std::string format_real(double v);

/// One CSV row per diagnostics row, LF line endings. Throws IoError.
void write_timeseries(const TrajectoryRecord& traj, const std::filesystem::path& path);
std::string timeseries_csv(const TrajectoryRecord& traj);

/// Parses a file written by write_timeseries (max_abs_uxx is not stored).
std::vector<DiagnosticsRow> read_timeseries(const std::filesystem::path& path);

enum class Verdict { Pass, Fail, Inapplicable };
std::string to_string(Verdict v);
inline Verdict verdict(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

struct RunSummary {
  int schema_version = kSummarySchemaVersion;
  SimConfig config;
  Termination termination = Termination::Completed;
  double t_final = 0.0;
  double max_drift = 0.0;
  Verdict sup_bound = Verdict::Inapplicable;
  Verdict agmon_u0 = Verdict::Inapplicable;
  Verdict poincare_u0 = Verdict::Inapplicable;
  std::optional<BlowupReport> blowup;
  double wall_seconds = 0.0;
};

nlohmann::ordered_json to_json(const SimConfig& cfg);
nlohmann::ordered_json to_json(const BlowupReport& r);
nlohmann::ordered_json to_json(const RunSummary& s);

/// Pretty-printed JSON. Throws IoError.
void write_summary(const RunSummary& summary, const std::filesystem::path& path);
void write_json(const nlohmann::ordered_json& j, const std::filesystem::path& path);

}  // namespace gch
