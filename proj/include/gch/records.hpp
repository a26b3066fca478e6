#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gch/grid.hpp"

namespace gch {

/// Per-step diagnostics. Everything except max_abs_uxx is written to the
/// time-series CSV.
struct DiagnosticsRow {
  double t = 0.0;
  double energy = 0.0;            // ||u||_0^2 + ||u_x||_0^2
  double energy_drift_rel = 0.0;  // |E(t) - E(0)| / E(0)
  double max_abs_u = 0.0;
  double min_ux = 0.0;
  double h_x0 = 0.0;              // u_x(x0, t)
  double uxx_x0 = 0.0;            // u_xx(x0, t)
  double neumann_res_0 = 0.0;     // |u_x(0, t)|
  double neumann_res_1 = 0.0;     // |u_x(1, t)|
  double conv_min = 0.0;          // min of G * (u^2 + u_x^2 / 2)
  double dt = 0.0;                // step that produced this row, 0 for t = 0
  double max_abs_uxx = 0.0;
};

struct StateSnapshot {
  double t = 0.0;
  Field u;
};

enum class Termination { Completed, BlowupDetected, DtUnderflow, CorruptState };

std::string to_string(Termination t);

struct TrajectoryRecord {
  std::vector<StateSnapshot> snapshots;
  std::vector<DiagnosticsRow> rows;
  Termination termination = Termination::Completed;
  double t_final = 0.0;
  double x0 = 0.5;
  std::size_t steps = 0;
};

/// Blow-up evidence for one run together with the theoretical bound.
struct BlowupReport {
  double t_cross = 0.0;             // first time min u_x <= -M
  std::optional<double> t_est;      // zero of the fitted 1/h line
  std::optional<double> fit_slope;  // slope of 1/h against t
  std::size_t fit_samples = 0;
  std::optional<double> t0_bound;   // only when the criterion holds
  double h0 = 0.0;                  // u0'(x0)
  double u0_h1 = 0.0;               // ||u0||_1 (the norm, not its square)
  bool criterion_satisfied = false;
  bool hypothesis_maintained = false;
  std::optional<bool> bound_respected;  // empty when the comparison is skipped
};

}  // namespace gch
