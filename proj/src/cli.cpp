#include "gch/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "gch/config.hpp"
#include "gch/diagnostics.hpp"
#include "gch/errors.hpp"
#include "gch/experiment.hpp"
#include "gch/output.hpp"
#include "gch/plots.hpp"

namespace gch {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

fs::path output_dir(const std::string& flag, const SimConfig* cfg) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GCH_OUT_DIR"); env && *env) return env;
  if (cfg && !cfg->out_dir.empty()) return cfg->out_dir;
  return "gch_out";
}

std::string show(const std::optional<double>& v) {
  if (!v) return "n/a";
  std::ostringstream s;
  s << std::setprecision(6) << *v;
  return s.str();
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

RunSummary summarize(const SimConfig& cfg, const TrajectoryRecord& traj, double seconds) {
  RunSummary s;
  s.config = cfg;
  s.termination = traj.termination;
  s.t_final = traj.t_final;
  s.max_drift = conservation_drift(traj);
  const Field& u0 = traj.snapshots.front().u;
  const double u0_h1 = std::sqrt(h1_norm_sq(u0));
  s.sup_bound = verdict(sup_bound_check(traj, u0_h1));
  s.agmon_u0 = verdict(agmon_check(u0).holds);
  s.poincare_u0 = verdict(poincare_check(u0).holds);
  if (auto report = detect_blowup(traj, cfg)) {
    complete_report(*report, evaluate_criterion(u0, traj.x0), traj, cfg);
    s.blowup = report;
  }
  s.wall_seconds = seconds;
  return s;
}

void write_run_outputs(const RunSummary& summary, const TrajectoryRecord& traj, const fs::path& dir,
                       std::optional<double> t0_bound, std::ostream& out, std::ostream& err) {
  fs::create_directories(dir);
  write_timeseries(traj, dir / "timeseries.csv");
  write_summary(summary, dir / "summary.json");
  const PlotResult plots = emit_plots(traj, dir, summary.blowup, t0_bound);
  for (const auto& w : plots.warnings) err << "warning: " << w << '\n';
  out << "outputs written to " << dir.string() << '\n';
}

bool run_ok(const RunSummary& s) {
  return s.termination != Termination::CorruptState && s.termination != Termination::DtUnderflow &&
         s.sup_bound != Verdict::Fail && s.agmon_u0 != Verdict::Fail && s.poincare_u0 != Verdict::Fail;
}

void print_summary(const RunSummary& s, std::ostream& out) {
  out << "termination: " << to_string(s.termination) << "  t_final: " << s.t_final << '\n'
      << "max relative energy drift: " << s.max_drift << '\n'
      << "sup bound: " << to_string(s.sup_bound) << "  Agmon(u0): " << to_string(s.agmon_u0)
      << "  Poincare(u0): " << to_string(s.poincare_u0) << '\n';
  if (s.blowup) {
    const auto& r = *s.blowup;
    out << "blow-up: t_cross " << r.t_cross << "  T_est " << show(r.t_est) << "  slope "
        << show(r.fit_slope) << "  T0 " << show(r.t0_bound) << "  bound_respected "
        << (r.bound_respected ? (*r.bound_respected ? "true" : "false") : "inapplicable") << '\n';
  }
}

int cmd_simulate(const std::string& config_path, const std::string& out_flag, std::ostream& out,
                 std::ostream& err) {
  const SimConfig cfg = parse_config(config_path);
  const auto start = Clock::now();
  const TrajectoryRecord traj = integrate(cfg);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const RunSummary summary = summarize(cfg, traj, seconds);
  print_summary(summary, out);
  write_run_outputs(summary, traj, output_dir(out_flag, &cfg), std::nullopt, out, err);
  return run_ok(summary) ? kExitPass : kExitCheckFailed;
}

struct BlowupArgs {
  std::string family = "A";
  double amplitude = 1.0;
  double k = 0.0;
  std::size_t n = 1025;
  double threshold = 1e3;
  double t_end = 0.0;  // 0: 1.5 T0, or 1 when the criterion fails
  double x0 = 0.5;
};

int cmd_blowup(const BlowupArgs& a, const std::string& out_flag, std::ostream& out, std::ostream& err) {
  SimConfig cfg;
  cfg.initial_data.family = parse_family(a.family);
  cfg.initial_data.amplitude = a.amplitude;
  cfg.k = a.k;
  cfg.n = a.n;
  cfg.blowup_threshold = a.threshold;
  cfg.x0 = a.x0;
  cfg.t_end = 1.0;  // placeholder for validation
  validate(cfg);
  const BlowupCriterion criterion = evaluate_criterion(make_initial_data(cfg.initial_data, make_grid(cfg.n)), a.x0);
  cfg.t_end = a.t_end > 0.0 ? a.t_end : (criterion.t0_bound ? 1.5 * *criterion.t0_bound : 1.0);

  const auto start = Clock::now();
  const ExperimentOutcome result = run_blowup_experiment(cfg, a.x0);
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  RunSummary summary = summarize(result.config, result.trajectory, seconds);
  summary.blowup = result.report;
  print_summary(summary, out);
  out << "criterion u0'(x0) < -sqrt(2)|u0|_1: h0 = " << criterion.h0 << ", |u0|_1 = " << criterion.u0_h1
      << " -> " << (criterion.satisfied ? "satisfied" : "not satisfied") << ", T0 = " << show(criterion.t0_bound)
      << '\n';
  out << "Riccati inequality: "
      << (result.riccati.applicable
              ? (result.riccati.holds() ? "holds" : "violated") + std::string(" (worst ") +
                    num(result.riccati.worst_violation) + ", tol " +
                    num(result.riccati.tolerance) + ")"
              : std::string("inapplicable"))
      << '\n';

  const fs::path dir = output_dir(out_flag, nullptr);
  write_run_outputs(summary, result.trajectory, dir, criterion.t0_bound, out, err);

  bool ok = run_ok(summary);
  if (criterion.satisfied) {
    ok = ok && result.report.has_value() && result.report->bound_respected.value_or(cfg.k != 0.0);
  }
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_kernel_check(std::size_t n, std::ostream& out) {
  const GridPtr grid = make_grid(n);
  const KernelTable kernel = make_kernel_table(grid);
  const Field one = Field::sample(grid, [](double) { return 1.0; });
  const Field sine = Field::sample(grid, [](double x) { return std::sin(2.0 * std::numbers::pi * x); });

  double unit_dev = 0.0;
  const Field g1 = convolve(kernel, one);
  for (std::size_t i = 0; i < n; ++i) unit_dev = std::max(unit_dev, std::abs(g1[i] - 1.0));
  const double residual = helmholtz_residual(sine, convolve(kernel, sine));

  bool positive = true, symmetric = true;
  for (std::size_t j = 0; j < n; ++j) {
    positive = positive && kernel.g_values[j] > 0.0;
    symmetric = symmetric && kernel.g_values[j] == kernel.g_values[n - 1 - j];
  }
  const bool ok = unit_dev <= 1e-5 && residual <= 5e-3 && positive && symmetric;
  out << std::setprecision(6) << "n = " << n << '\n'
      << "max |G*1 - 1|                   = " << unit_dev << '\n'
      << "helmholtz residual (sin 2 pi x) = " << residual << '\n'
      << "kernel positive: " << (positive ? "yes" : "no") << ", reflection symmetric: "
      << (symmetric ? "yes" : "no") << '\n'
      << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_invariants(const std::string& config_path, std::ostream& out) {
  const SimConfig cfg = parse_config(config_path);
  const TrajectoryRecord traj = integrate(cfg);
  const Field& u0 = traj.snapshots.front().u;
  const double u0_h1 = std::sqrt(h1_norm_sq(u0));
  const bool detected = traj.termination == Termination::BlowupDetected;

  struct Line {
    std::string name;
    Verdict v;
    std::string detail;
  };
  std::vector<Line> lines;

  bool dirichlet = true;
  for (const auto& s : traj.snapshots) dirichlet = dirichlet && s.u[0] == 0.0 && s.u[s.u.size() - 1] == 0.0;
  lines.push_back({"dirichlet boundary values exactly zero", verdict(dirichlet), ""});

  double conv_min = 0.0;
  for (const auto& r : traj.rows) conv_min = std::min(conv_min, r.conv_min);
  lines.push_back({"G*(u^2 + u_x^2/2) >= -1e-12", verdict(conv_min >= -1e-12), "min " + num(conv_min)});

  const double drift = detected ? conservation_drift(traj, -50.0) : conservation_drift(traj);
  const double drift_tol = detected ? 1e-3 : 1e-4;
  lines.push_back({detected ? "energy drift (min u_x >= -50)" : "energy drift", verdict(drift <= drift_tol),
                   num(drift) + " (tol " + num(drift_tol) + ")"});

  lines.push_back({"sup |u| <= 2 |u0|_1", verdict(sup_bound_check(traj, u0_h1)), ""});
  const auto agmon = agmon_check(u0);
  lines.push_back({"Agmon on u0", verdict(agmon.holds), num(agmon.lhs) + " <= " + num(agmon.rhs)});
  const auto poincare = poincare_check(u0);
  lines.push_back({"Poincare on u0", verdict(poincare.holds),
                   num(poincare.lhs) + " <= " + num(poincare.rhs)});
  try {
    const auto id = lambda_identity_check(u0);
    lines.push_back({"norm identity on u0", verdict(id.rel_err <= 1e-3), "rel_err " + num(id.rel_err)});
  } catch (const PreconditionError& e) {
    lines.push_back({"norm identity on u0", Verdict::Inapplicable, e.what()});
  }

  if (is_symmetric_family(cfg.initial_data.family) && cfg.k == 0.0) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& s : traj.snapshots) {
      const double r = antisymmetry_residual(s.u);
      worst = std::max(worst, r);
      ok = ok && r <= 1e-6 * s.u.max_abs();
    }
    lines.push_back({"odd symmetry about x = 1/2", verdict(ok), "max residual " + num(worst)});
  } else {
    lines.push_back({"odd symmetry about x = 1/2", Verdict::Inapplicable, "needs family A/C and k = 0"});
  }

  const auto riccati = riccati_monitor(traj, cfg.x0, u0_h1);
  lines.push_back({"Riccati inequality at x0",
                   riccati.applicable ? verdict(riccati.holds()) : Verdict::Inapplicable,
                   riccati.applicable ? "worst " + num(riccati.worst_violation) + ", tol " +
                                            num(riccati.tolerance)
                                      : "u_xx(x0) not maintained at zero"});

  bool ok = true;
  out << "termination: " << to_string(traj.termination) << "  t_final: " << traj.t_final << '\n';
  for (const auto& l : lines) {
    out << std::left << std::setw(15) << ("[" + to_string(l.v) + "]") << l.name;
    if (!l.detail.empty()) out << "  (" << l.detail << ")";
    out << '\n';
    ok = ok && l.v != Verdict::Fail;
  }
  return ok ? kExitPass : kExitCheckFailed;
}

int cmd_converge(const std::string& config_path, const std::vector<std::size_t>& ns, const std::string& out_flag,
                 std::ostream& out) {
  const SimConfig cfg = parse_config(config_path);
  const ConvergenceTable table = convergence_study(cfg, ns);

  nlohmann::ordered_json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["config"] = to_json(cfg);
  out << std::setw(8) << "n" << std::setw(18) << "termination" << std::setw(14) << "drift" << std::setw(14)
      << "helmholtz" << std::setw(12) << "T_est" << std::setw(14) << "riccati" << '\n';
  bool any_blowup = false;
  for (const auto& r : table.rows) {
    any_blowup = any_blowup || r.termination == Termination::BlowupDetected;
    out << std::setw(8) << r.n << std::setw(18) << to_string(r.termination) << std::setw(14) << r.drift
        << std::setw(14) << r.helmholtz_residual << std::setw(12) << show(r.t_est) << std::setw(14)
        << show(r.riccati_worst) << '\n';
    j["rows"].push_back({{"n", r.n},
                         {"termination", to_string(r.termination)},
                         {"drift", r.drift},
                         {"helmholtz_residual", r.helmholtz_residual},
                         {"T_est", r.t_est ? nlohmann::ordered_json(*r.t_est) : nullptr},
                         {"riccati_worst", r.riccati_worst ? nlohmann::ordered_json(*r.riccati_worst) : nullptr}});
  }
  j["drift_orders"] = table.drift_orders;
  j["helmholtz_orders"] = table.helmholtz_orders;
  j["T_est_spread"] = table.t_est_spread ? nlohmann::ordered_json(*table.t_est_spread) : nullptr;

  out << "drift orders:";
  for (double o : table.drift_orders) out << ' ' << o;
  out << "\nhelmholtz orders:";
  for (double o : table.helmholtz_orders) out << ' ' << o;
  out << "\nT_est spread: " << show(table.t_est_spread) << '\n';

  bool ok = true;
  if (any_blowup) {
    ok = table.t_est_spread && *table.t_est_spread <= 0.05;
  } else {
    for (double o : table.drift_orders) ok = ok && o >= 1.8;
  }
  const fs::path dir = output_dir(out_flag, &cfg);
  fs::create_directories(dir);
  write_json(j, dir / "convergence.json");
  out << "outputs written to " << dir.string() << '\n' << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitPass : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Camassa-Holm initial boundary value problem: simulation and checks", "gch"};
  app.require_subcommand(1);

  std::string config_path, out_flag;
  auto* simulate = app.add_subcommand("simulate", "Integrate a configured run and write CSV/JSON/SVG outputs");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_flag, "Output directory");

  BlowupArgs blow;
  auto* blowup = app.add_subcommand("blowup", "Wave-breaking experiment against the T0 bound");
  blowup->add_option("--family", blow.family, "Initial-data family (A, B, C)")->required();
  blowup->add_option("--amplitude", blow.amplitude, "Amplitude a")->required();
  blowup->add_option("--k", blow.k, "Coefficient k")->required();
  blowup->add_option("--n", blow.n, "Grid nodes (odd)")->required();
  blowup->add_option("--threshold", blow.threshold, "Blow-up threshold M (default 1e3)");
  blowup->add_option("--t-end", blow.t_end, "Final time (default 1.5 T0)");
  blowup->add_option("--x0", blow.x0, "Monitored point (default 0.5)");
  blowup->add_option("--out", out_flag, "Output directory");

  std::size_t kernel_n = 1025;
  auto* kernel = app.add_subcommand("kernel-check", "Green's kernel convolution and inversion checks");
  kernel->add_option("--n", kernel_n, "Grid nodes")->required();

  auto* invariants = app.add_subcommand("invariants", "Run a config and evaluate every invariant");
  invariants->add_option("--config", config_path, "Config file")->required();

  std::vector<std::size_t> ns;
  auto* converge = app.add_subcommand("converge", "Refinement study over several resolutions");
  converge->add_option("--config", config_path, "Config file")->required();
  converge->add_option("--ns", ns, "Comma-separated resolutions")->required()->delimiter(',');
  converge->add_option("--out", out_flag, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfigError;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_flag, out, err);
    if (*blowup) return cmd_blowup(blow, out_flag, out, err);
    if (*kernel) return cmd_kernel_check(kernel_n, out);
    if (*invariants) return cmd_invariants(config_path, out);
    if (*converge) return cmd_converge(config_path, ns, out_flag, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitConfigError;
}

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace gch
