#include "gch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gch/errors.hpp"

namespace gch {

namespace {

double square_integral(const Field& f) { return integrate(f * f); }

std::span<const DiagnosticsRow> leading_rows(const TrajectoryRecord& traj,
                                             std::optional<double> min_ux_floor) {
  std::span<const DiagnosticsRow> rows = traj.rows;
  if (!min_ux_floor) return rows;
  const auto end = std::find_if(rows.begin(), rows.end(),
                                [&](const DiagnosticsRow& r) { return r.min_ux < *min_ux_floor; });
  return rows.first(static_cast<std::size_t>(end - rows.begin()));
}

// Derivative of samples y(t) by centered differences over `stride` samples,
// one-sided where the centered stencil does not fit.
std::vector<double> sample_derivative(std::span<const double> t, std::span<const double> y,
                                      std::size_t stride) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= stride ? i - stride : i;
    const std::size_t hi = i + stride < n ? i + stride : i;
    if (hi == lo) continue;
    d[i] = (y[hi] - y[lo]) / (t[hi] - t[lo]);
  }
  return d;
}

}  // namespace

double h1_norm_sq(const Field& u) {
  const Field ux = diff1(u);
  return integrate(u * u + ux * ux);
}

DiagnosticsRow make_row(const KernelTable& kernel, const Field& u, double t, double dt,
                        double energy0, std::size_t x0_index) {
  const Field ux = diff1(u);
  const Field uxx = diff2(u);
  const Field p = u * u + 0.5 * (ux * ux);

  DiagnosticsRow r;
  r.t = t;
  r.energy = integrate(u * u + ux * ux);
  r.energy_drift_rel = energy0 > 0.0 ? std::abs(r.energy - energy0) / energy0 : 0.0;
  r.max_abs_u = u.max_abs();
  r.min_ux = ux.min();
  r.h_x0 = ux[x0_index];
  r.uxx_x0 = uxx[x0_index];
  r.neumann_res_0 = std::abs(ux[0]);
  r.neumann_res_1 = std::abs(ux[ux.size() - 1]);
  r.conv_min = convolve(kernel, p).min();
  r.dt = dt;
  r.max_abs_uxx = uxx.max_abs();
  return r;
}

double conservation_drift(const TrajectoryRecord& traj, std::optional<double> min_ux_floor) {
  double worst = 0.0;
  for (const auto& r : leading_rows(traj, min_ux_floor)) worst = std::max(worst, r.energy_drift_rel);
  return worst;
}

IdentityCheck lambda_identity_check(const Field& u) {
  const BoundaryValues b = boundary_values(u);
  if (b.max_abs() > kH2BoundaryTol) {
    throw PreconditionError("field is not in H^2_{0,1}: boundary residual " +
                            std::to_string(b.max_abs()) + " exceeds " + std::to_string(kH2BoundaryTol));
  }
  const Field ux = diff1(u);
  const Field uxx = diff2(u);
  const Field uxxx = diff3(u);

  IdentityCheck c;
  c.lhs = integrate((u - uxx) * u) + integrate((ux - uxxx) * ux);
  c.rhs = square_integral(u) + 2.0 * square_integral(ux) + square_integral(uxx);
  c.rel_err = c.rhs > 0.0 ? std::abs(c.lhs - c.rhs) / c.rhs : std::abs(c.lhs);
  return c;
}

InequalityCheck agmon_check(const Field& u) {
  const Field ux = diff1(u);
  InequalityCheck c;
  c.lhs = square_integral(u);
  c.rhs = 2.0 * u[0] * u[0] + 4.0 * square_integral(ux);
  c.holds = c.lhs <= c.rhs + 1e-10;
  return c;
}

InequalityCheck poincare_check(const Field& u) {
  const Field ux = diff1(u);
  InequalityCheck c;
  const double peak = u.max_abs();
  c.lhs = peak * peak;
  c.rhs = u[0] * u[0] + 2.0 * std::sqrt(square_integral(u)) * std::sqrt(square_integral(ux));
  c.holds = c.lhs <= c.rhs + 1e-10;
  return c;
}

bool sup_bound_check(const TrajectoryRecord& traj, double u0_h1) {
  const double bound = 2.0 * u0_h1 + 1e-8;
  return std::all_of(traj.rows.begin(), traj.rows.end(),
                     [&](const DiagnosticsRow& r) { return r.max_abs_u <= bound; });
}

double antisymmetry_residual(const Field& u) {
  const std::size_t n = u.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(u[i] + u[n - 1 - i]));
  return worst;
}

bool hypothesis_maintained(const TrajectoryRecord& traj, std::optional<double> min_ux_floor) {
  for (const auto& r : leading_rows(traj, min_ux_floor)) {
    if (std::abs(r.uxx_x0) > kHypothesisTol * r.max_abs_uxx) return false;
  }
  return true;
}

RiccatiResult riccati_monitor(const TrajectoryRecord& traj, double x0, double u0_h1,
                              double min_ux_floor) {
  if (std::abs(x0 - traj.x0) > 1e-12) {
    throw ConfigError("trajectory monitored x0 = " + std::to_string(traj.x0) + ", requested " +
                      std::to_string(x0));
  }
  RiccatiResult res;
  const auto rows = leading_rows(traj, min_ux_floor);
  res.samples = rows.size();
  res.applicable = rows.size() >= 3 && hypothesis_maintained(traj, min_ux_floor);
  if (!res.applicable) return res;

  std::vector<double> t(rows.size()), h(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t[i] = rows[i].t;
    h[i] = rows[i].h_x0;
  }
  const auto dh = sample_derivative(t, h, 1);
  const auto dh_coarse = sample_derivative(t, h, 2);

  const double forcing = u0_h1 * u0_h1;
  res.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    res.worst_violation = std::max(res.worst_violation, dh[i] + 0.5 * h[i] * h[i] - forcing);
    res.error_estimate = std::max(res.error_estimate, std::abs(dh[i] - dh_coarse[i]));
  }
  res.tolerance = 10.0 * res.error_estimate;
  return res;
}

}  // namespace gch
