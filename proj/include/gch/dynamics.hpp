#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "gch/initial_data.hpp"
#include "gch/kernel.hpp"
#include "gch/records.hpp"

namespace gch {

enum class RhsForm { UForm, MForm };

std::string to_string(RhsForm f);
RhsForm parse_rhs_form(const std::string& s);

struct SimConfig {
  double k = 0.0;
  std::size_t n = 513;
  double cfl = 0.3;
  double dt_max = 1e-3;
  double dt_min = 1e-12;
  double t_end = 1.0;
  double blowup_threshold = 1e3;  // M: stop once min u_x <= -M
  InitialDataSpec initial_data;
  RhsForm rhs_form = RhsForm::UForm;
  std::size_t record_stride = 1;
  double x0 = 0.5;                // monitored point, must be a node
  std::string out_dir;
};

/// Throws ConfigError naming the offending field.
void validate(const SimConfig& cfg);

/// u_t = -(u + k) u_x - d_x (G * (u^2 + u_x^2 / 2)).
Field rhs_u_form(const KernelTable& kernel, const Field& u, double k);

/// m = u - u_xx, m_t = -(u + k) m_x - 2 u_x m, u_t = G * m_t.
Field rhs_m_form(const KernelTable& kernel, const Field& u, double k);

Field evaluate_rhs(const KernelTable& kernel, const Field& u, const SimConfig& cfg);

/// Classical RK4 with u set to zero at both end nodes after every stage and
/// after the step. Throws CorruptStateError on non-finite values.
StateSnapshot step_rk4(const KernelTable& kernel, const StateSnapshot& s, double dt,
                       const SimConfig& cfg);

/// min(dt_max, cfl h / (max|u| + |k| + 1e-8), 0.5 / max(1, |min u_x|)).
double choose_dt(const StateSnapshot& s, const SimConfig& cfg);

/// Runs from t = 0 until t_end, blow-up detection, dt underflow or a corrupt
/// state. One diagnostics row per accepted step; snapshots every
/// record_stride steps plus the first and last state.
TrajectoryRecord integrate(const SimConfig& cfg);

/// Number of rows before the threshold crossing used by the 1/h fit.
inline constexpr std::size_t kBlowupFitSamples = 20;

/// Threshold crossing time and the extrapolated blow-up time from a linear
/// least-squares fit of 1/min u_x over the last kBlowupFitSamples rows before
/// the crossing. Empty unless the run terminated with BlowupDetected. Only
/// the crossing and fit fields of the report are filled.
std::optional<BlowupReport> detect_blowup(const TrajectoryRecord& traj, const SimConfig& cfg);

}  // namespace gch
