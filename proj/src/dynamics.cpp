#include "gch/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gch/diagnostics.hpp"
#include "gch/errors.hpp"

namespace gch {

namespace {

constexpr double kSpeedFloor = 1e-8;
constexpr double kBlowupClamp = 0.5;
constexpr double kInitialBoundaryTol = 1e-10;

void enforce_dirichlet(Field& u) {
  u[0] = 0.0;
  u[u.size() - 1] = 0.0;
}

void require_finite(const Field& f, const char* what) {
  if (!f.all_finite()) throw CorruptStateError(std::string("non-finite values in ") + what);
}

Field axpy(const Field& u, double a, const Field& k) {
  std::vector<double> v(u.values().begin(), u.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * k[i];
  return Field(u.grid(), std::move(v));
}

Field stage(const Field& u, double a, const Field& k) {
  Field s = axpy(u, a, k);
  enforce_dirichlet(s);
  require_finite(s, "Runge-Kutta stage");
  return s;
}

}  // namespace

std::string to_string(RhsForm f) { return f == RhsForm::UForm ? "u_form" : "m_form"; }

RhsForm parse_rhs_form(const std::string& s) {
  if (s == "u_form" || s == "u") return RhsForm::UForm;
  if (s == "m_form" || s == "m") return RhsForm::MForm;
  throw ConfigError("unknown rhs_form '" + s + "' (expected u_form or m_form)");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::BlowupDetected: return "blowup_detected";
    case Termination::DtUnderflow: return "dt_underflow";
    case Termination::CorruptState: return "corrupt_state";
  }
  return "?";
}

void validate(const SimConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!std::isfinite(cfg.k)) fail("k must be finite");
  if (cfg.n < Grid::kMinNodes) fail("n must be at least " + std::to_string(Grid::kMinNodes));
  if (!(cfg.cfl > 0.0)) fail("cfl must be positive");
  if (!(cfg.dt_max > 0.0)) fail("dt_max must be positive");
  if (!(cfg.dt_min > 0.0)) fail("dt_min must be positive");
  if (!(cfg.dt_min < cfg.dt_max)) fail("dt_min must be smaller than dt_max");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) fail("t_end must be positive");
  if (!(cfg.blowup_threshold > 0.0)) fail("blowup_threshold must be positive");
  if (cfg.record_stride == 0) fail("record_stride must be positive");
  if (!(cfg.x0 > 0.0 && cfg.x0 < 1.0)) fail("x0 must lie in (0, 1)");
  if (is_symmetric_family(cfg.initial_data.family) && cfg.n % 2 == 0) {
    fail("n must be odd for symmetric families");
  }
}

Field rhs_u_form(const KernelTable& kernel, const Field& u, double k) {
  require_finite(u, "u");
  const Field ux = diff1(u);
  const Field q = convolve(kernel, u * u + 0.5 * (ux * ux));
  const Field qx = diff1(q);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(u[i] + k) * ux[i] - qx[i];
  Field r(u.grid(), std::move(out));
  require_finite(r, "u-form right-hand side");
  return r;
}

Field rhs_m_form(const KernelTable& kernel, const Field& u, double k) {
  require_finite(u, "u");
  const Field ux = diff1(u);
  const Field m = u - diff2(u);
  const Field mx = diff1(m);
  std::vector<double> mt(u.size());
  for (std::size_t i = 0; i < mt.size(); ++i) mt[i] = -(u[i] + k) * mx[i] - 2.0 * ux[i] * m[i];
  Field r = convolve(kernel, Field(u.grid(), std::move(mt)));
  require_finite(r, "m-form right-hand side");
  return r;
}

Field evaluate_rhs(const KernelTable& kernel, const Field& u, const SimConfig& cfg) {
  return cfg.rhs_form == RhsForm::UForm ? rhs_u_form(kernel, u, cfg.k) : rhs_m_form(kernel, u, cfg.k);
}

StateSnapshot step_rk4(const KernelTable& kernel, const StateSnapshot& s, double dt,
                       const SimConfig& cfg) {
  const Field& u = s.u;
  const Field k1 = evaluate_rhs(kernel, u, cfg);
  const Field k2 = evaluate_rhs(kernel, stage(u, 0.5 * dt, k1), cfg);
  const Field k3 = evaluate_rhs(kernel, stage(u, 0.5 * dt, k2), cfg);
  const Field k4 = evaluate_rhs(kernel, stage(u, dt, k3), cfg);

  std::vector<double> next(u.values().begin(), u.values().end());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  StateSnapshot out{s.t + dt, Field(u.grid(), std::move(next))};
  enforce_dirichlet(out.u);
  require_finite(out.u, "u after step");
  return out;
}

double choose_dt(const StateSnapshot& s, const SimConfig& cfg) {
  const double h = s.u.grid()->h();
  const double advective = cfg.cfl * h / (s.u.max_abs() + std::abs(cfg.k) + kSpeedFloor);
  const double steepening = kBlowupClamp / std::max(1.0, std::abs(diff1(s.u).min()));
  return std::min({cfg.dt_max, advective, steepening});
}

TrajectoryRecord integrate(const SimConfig& cfg) {
  validate(cfg);
  const GridPtr grid = make_grid(cfg.n);
  const KernelTable kernel = make_kernel_table(grid);
  const std::size_t x0_index = grid->node_index(cfg.x0);

  Field u0 = make_initial_data(cfg.initial_data, grid);
  const BoundaryValues b = initial_boundary_values(cfg.initial_data, u0);
  if (b.max_abs() > kInitialBoundaryTol) {
    throw ConfigError("initial data violates the boundary conditions u = u_x = 0 at x = 0, 1 "
                      "(largest residual " + std::to_string(b.max_abs()) + ")");
  }
  enforce_dirichlet(u0);

  TrajectoryRecord traj;
  traj.x0 = cfg.x0;
  StateSnapshot state{0.0, std::move(u0)};
  const double energy0 = h1_norm_sq(state.u);
  traj.rows.push_back(make_row(kernel, state.u, 0.0, 0.0, energy0, x0_index));
  traj.snapshots.push_back(state);

  traj.termination = Termination::Completed;
  while (cfg.t_end - state.t > cfg.dt_min) {
    double dt = choose_dt(state, cfg);
    if (!(dt >= cfg.dt_min)) {
      traj.termination = Termination::DtUnderflow;
      break;
    }
    dt = std::min(dt, cfg.t_end - state.t);
    try {
      state = step_rk4(kernel, state, dt, cfg);
    } catch (const CorruptStateError&) {
      traj.termination = Termination::CorruptState;
      break;
    }
    const DiagnosticsRow row = make_row(kernel, state.u, state.t, dt, energy0, x0_index);
    if (!std::isfinite(row.energy) || !std::isfinite(row.conv_min)) {
      traj.termination = Termination::CorruptState;
      break;
    }
    traj.rows.push_back(row);
    ++traj.steps;
    if (traj.steps % cfg.record_stride == 0) traj.snapshots.push_back(state);
    if (row.min_ux <= -cfg.blowup_threshold) {
      traj.termination = Termination::BlowupDetected;
      break;
    }
  }
  if (traj.snapshots.back().t < state.t) traj.snapshots.push_back(state);
  traj.t_final = state.t;
  return traj;
}

std::optional<BlowupReport> detect_blowup(const TrajectoryRecord& traj, const SimConfig& cfg) {
  if (traj.termination != Termination::BlowupDetected) return std::nullopt;
  const auto& rows = traj.rows;
  const auto cross = std::find_if(rows.begin(), rows.end(), [&](const DiagnosticsRow& r) {
    return r.min_ux <= -cfg.blowup_threshold;
  });
  if (cross == rows.end()) return std::nullopt;

  BlowupReport report;
  report.t_cross = cross->t;

  const auto crossing = static_cast<std::size_t>(cross - rows.begin());
  std::vector<double> t, inv_h;
  for (std::size_t i = crossing; i-- > 0 && t.size() < kBlowupFitSamples;) {
    if (rows[i].min_ux < 0.0 && std::isfinite(rows[i].min_ux)) {
      t.push_back(rows[i].t);
      inv_h.push_back(1.0 / rows[i].min_ux);
    }
  }
  report.fit_samples = t.size();
  if (t.size() < kBlowupFitSamples) return report;

  const double m = static_cast<double>(t.size());
  const double t_mean = std::accumulate(t.begin(), t.end(), 0.0) / m;
  const double y_mean = std::accumulate(inv_h.begin(), inv_h.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    sxx += (t[i] - t_mean) * (t[i] - t_mean);
    sxy += (t[i] - t_mean) * (inv_h[i] - y_mean);
  }
  if (sxx <= 0.0) return report;
  const double slope = sxy / sxx;
  report.fit_slope = slope;
  if (slope > 0.0) report.t_est = t_mean - y_mean / slope;
  return report;
}

}  // namespace gch
