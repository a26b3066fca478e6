#pragma once

#include <cstddef>
#include <optional>

#include "gch/kernel.hpp"
#include "gch/records.hpp"

namespace gch {

/// ||u||_1^2 = int (u^2 + u_x^2) dx, trapezoidal.
double h1_norm_sq(const Field& u);

/// Diagnostics for state u at time t. `energy0` is E(0) (the drift is zero
/// when it vanishes); `x0_index` selects the monitored node.
DiagnosticsRow make_row(const KernelTable& kernel, const Field& u, double t, double dt,
                        double energy0, std::size_t x0_index);

/// Largest relative energy drift over the rows. With `min_ux_floor`, only the
/// leading rows with min u_x >= floor are considered.
double conservation_drift(const TrajectoryRecord& traj,
                          std::optional<double> min_ux_floor = std::nullopt);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
};

/// Boundary tolerance for H^2_{0,1} membership of sampled data.
inline constexpr double kH2BoundaryTol = 1e-8;

/// int (u - u_xx) u + int (u_x - u_xxx) u_x  versus  ||u||^2 + 2||u_x||^2 + ||u_xx||^2.
/// Throws PreconditionError unless u(0), u(1), u_x(0), u_x(1) vanish within
/// kH2BoundaryTol.
IdentityCheck lambda_identity_check(const Field& u);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// int u^2 <= 2 u(0)^2 + 4 int u_x^2
InequalityCheck agmon_check(const Field& u);
/// max u^2 <= u(0)^2 + 2 sqrt(int u^2) sqrt(int u_x^2)
InequalityCheck poincare_check(const Field& u);

/// max|u| <= 2 ||u0||_1 + 1e-8 on every row. `u0_h1` is the norm itself.
bool sup_bound_check(const TrajectoryRecord& traj, double u0_h1);

/// max_i |u(x_i) + u(1 - x_i)|
double antisymmetry_residual(const Field& u);

struct RiccatiResult {
  bool applicable = false;
  double worst_violation = 0.0;  // max_t [h' + h^2/2 - ||u0||_1^2]
  double tolerance = 0.0;        // 10 x the step-doubling error estimate of h'
  double error_estimate = 0.0;
  std::size_t samples = 0;
  bool holds() const { return applicable && worst_violation <= tolerance; }
};

/// Relative size of u_xx(x0) that still counts as a zero.
inline constexpr double kHypothesisTol = 1e-3;

/// Checks h' <= -h^2/2 + ||u0||_1^2 for h(t) = u_x(x0, t) along the rows with
/// min u_x >= min_ux_floor. h' comes from centered differences in t
/// (one-sided at the ends); its error is estimated by repeating the estimate
/// on every other sample. Inapplicable when |u_xx(x0)| exceeds
/// kHypothesisTol * max|u_xx| on any row in the window.
RiccatiResult riccati_monitor(const TrajectoryRecord& traj, double x0, double u0_h1,
                              double min_ux_floor = -100.0);

/// |u_xx(x0)| <= kHypothesisTol * max|u_xx| on every row with min u_x above
/// `min_ux_floor` (all rows when empty).
bool hypothesis_maintained(const TrajectoryRecord& traj,
                           std::optional<double> min_ux_floor = std::nullopt);

}  // namespace gch
