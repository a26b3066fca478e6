#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gch/records.hpp"

namespace gch {

struct PlotResult {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
};

/// Writes SVG figures into `dir`:
///   waterfall.svg  u(x, t) at the recorded snapshots
///   energy.svg     E(t) with the constant E(0) reference
///   gradient.svg   min u_x(t), the fitted 1/h extrapolation, T_est and T0 markers
/// Never throws; failures are reported as warnings. An empty trajectory
/// produces no files.
PlotResult emit_plots(const TrajectoryRecord& traj, const std::filesystem::path& dir,
                      const std::optional<BlowupReport>& report = std::nullopt,
                      std::optional<double> t0_bound = std::nullopt);

}  // namespace gch
