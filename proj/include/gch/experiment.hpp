#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gch/diagnostics.hpp"
#include "gch/dynamics.hpp"

namespace gch {

/// Wave-breaking criterion at x0: u0'(x0) < -sqrt(2) ||u0||_1. When it holds
/// the maximal existence time is at most
///   T0 = ln((h0 - s) / (h0 + s)) / s,   s = sqrt(2) ||u0||_1,  h0 = u0'(x0).
struct BlowupCriterion {
  double h0 = 0.0;
  double u0_h1 = 0.0;  // ||u0||_1
  bool satisfied = false;
  std::optional<double> t0_bound;
};

BlowupCriterion evaluate_criterion(const Field& u0, double x0);

/// T0 when the criterion holds, empty otherwise.
std::optional<double> blowup_time_bound(const Field& u0, double x0);

/// Adds the criterion, hypothesis and bound comparison to a report from
/// detect_blowup. The comparison is skipped (bound_respected empty) for
/// k != 0 or when T_est or T0 is missing.
void complete_report(BlowupReport& report, const BlowupCriterion& criterion,
                     const TrajectoryRecord& traj, const SimConfig& cfg);

/// Relative slack on T0 when comparing the extrapolated blow-up time.
inline constexpr double kBoundSlack = 0.02;

struct ExperimentOutcome {
  SimConfig config;
  TrajectoryRecord trajectory;
  BlowupCriterion criterion;
  std::optional<BlowupReport> report;  // present iff blow-up was detected
  RiccatiResult riccati;
};

/// Integrates `cfg` (with the monitored point moved to x0), detects blow-up
/// and compares the extrapolated time with T0. The comparison is skipped for
/// k != 0, where the u_xx(x0) = 0 hypothesis is not maintained.
ExperimentOutcome run_blowup_experiment(SimConfig cfg, double x0);

/// log(e_coarse / e_fine) / log(h_coarse / h_fine)
double observed_order(double err_coarse, double err_fine, std::size_t n_coarse, std::size_t n_fine);

struct ConvergenceRow {
  std::size_t n = 0;
  Termination termination = Termination::Completed;
  double drift = 0.0;
  double helmholtz_residual = 0.0;  // of the initial data
  std::optional<double> t_est;
  std::optional<double> riccati_worst;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::vector<double> drift_orders;      // between consecutive rows
  std::vector<double> helmholtz_orders;
  std::optional<double> t_est_spread;    // (max - min) / median when every row has T_est
};

/// Runs `cfg` at each resolution (in parallel, one run per task). Requires at
/// least 3 strictly increasing odd resolutions; throws ConfigError otherwise.
ConvergenceTable convergence_study(const SimConfig& cfg, std::span<const std::size_t> ns);

}  // namespace gch
