#include "gch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "gch/errors.hpp"

namespace gch {

BlowupCriterion evaluate_criterion(const Field& u0, double x0) {
  const std::size_t i0 = u0.grid()->node_index(x0);
  BlowupCriterion c;
  c.h0 = diff1(u0)[i0];
  c.u0_h1 = std::sqrt(h1_norm_sq(u0));
  const double s = std::sqrt(2.0) * c.u0_h1;
  c.satisfied = c.h0 < -s;
  if (c.satisfied) c.t0_bound = std::log((c.h0 - s) / (c.h0 + s)) / s;
  return c;
}

std::optional<double> blowup_time_bound(const Field& u0, double x0) {
  return evaluate_criterion(u0, x0).t0_bound;
}

void complete_report(BlowupReport& r, const BlowupCriterion& criterion, const TrajectoryRecord& traj,
                     const SimConfig& cfg) {
  r.h0 = criterion.h0;
  r.u0_h1 = criterion.u0_h1;
  r.criterion_satisfied = criterion.satisfied;
  r.t0_bound = criterion.t0_bound;
  r.hypothesis_maintained = cfg.k == 0.0 && hypothesis_maintained(traj);
  r.bound_respected.reset();
  if (r.criterion_satisfied && r.hypothesis_maintained && r.t_est && r.t0_bound) {
    r.bound_respected = *r.t_est <= *r.t0_bound * (1.0 + kBoundSlack);
  }
}

ExperimentOutcome run_blowup_experiment(SimConfig cfg, double x0) {
  cfg.x0 = x0;
  validate(cfg);
  ExperimentOutcome out;
  {
    const GridPtr grid = make_grid(cfg.n);
    out.criterion = evaluate_criterion(make_initial_data(cfg.initial_data, grid), x0);
  }
  out.trajectory = integrate(cfg);
  out.config = cfg;
  out.riccati = riccati_monitor(out.trajectory, x0, out.criterion.u0_h1);

  out.report = detect_blowup(out.trajectory, cfg);
  if (out.report) complete_report(*out.report, out.criterion, out.trajectory, cfg);
  return out;
}

double observed_order(double err_coarse, double err_fine, std::size_t n_coarse, std::size_t n_fine) {
  const double h_ratio = static_cast<double>(n_fine - 1) / static_cast<double>(n_coarse - 1);
  return std::log(err_coarse / err_fine) / std::log(h_ratio);
}

ConvergenceTable convergence_study(const SimConfig& cfg, std::span<const std::size_t> ns) {
  if (ns.size() < 3) throw ConfigError("convergence study needs at least 3 resolutions");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] % 2 == 0) throw ConfigError("resolution " + std::to_string(ns[i]) + " is not odd");
    if (i > 0 && ns[i] <= ns[i - 1]) {
      throw ConfigError("resolutions must be strictly increasing");
    }
  }

  auto run_one = [cfg](std::size_t n) {
    SimConfig c = cfg;
    c.n = n;
    const ExperimentOutcome out = run_blowup_experiment(c, c.x0);
    ConvergenceRow row;
    row.n = n;
    row.termination = out.trajectory.termination;
    row.drift = conservation_drift(out.trajectory);
    const GridPtr grid = make_grid(n);
    const Field u0 = make_initial_data(c.initial_data, grid);
    row.helmholtz_residual = helmholtz_residual(u0, convolve(make_kernel_table(grid), u0));
    if (out.report) row.t_est = out.report->t_est;
    if (out.riccati.applicable) row.riccati_worst = out.riccati.worst_violation;
    return row;
  };

  std::vector<std::future<ConvergenceRow>> jobs;
  for (std::size_t n : ns) jobs.push_back(std::async(std::launch::async, run_one, n));

  ConvergenceTable table;
  for (auto& j : jobs) table.rows.push_back(j.get());
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const auto& a = table.rows[i - 1];
    const auto& b = table.rows[i];
    table.drift_orders.push_back(observed_order(a.drift, b.drift, a.n, b.n));
    table.helmholtz_orders.push_back(
        observed_order(a.helmholtz_residual, b.helmholtz_residual, a.n, b.n));
  }
  std::vector<double> estimates;
  for (const auto& r : table.rows) {
    if (r.t_est) estimates.push_back(*r.t_est);
  }
  if (estimates.size() == table.rows.size()) {
    std::sort(estimates.begin(), estimates.end());
    const std::size_t m = estimates.size();
    const double median = m % 2 ? estimates[m / 2] : 0.5 * (estimates[m / 2 - 1] + estimates[m / 2]);
    table.t_est_spread = (estimates.back() - estimates.front()) / median;
  }
  return table;
}

}  // namespace gch
