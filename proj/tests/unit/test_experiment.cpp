#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gch/diagnostics.hpp"
#include "gch/errors.hpp"
#include "gch/experiment.hpp"

using namespace gch;

namespace {

constexpr double pi = std::numbers::pi;

SimConfig family(Family f, double a, double k, std::size_t n, double t_end) {
  SimConfig cfg;
  cfg.initial_data.family = f;
  cfg.initial_data.amplitude = a;
  cfg.k = k;
  cfg.n = n;
  cfg.t_end = t_end;
  return cfg;
}

// T0 from its closed form, with ||u0||_1^2 = a^2 (5/8 + 4 pi^2) and h0 = -4 pi a.
double t0_closed_form(double a) {
  const double s = std::sqrt(2.0) * a * std::sqrt(5.0 / 8.0 + 4.0 * pi * pi);
  const double h0 = -4.0 * pi * a;
  return std::log((h0 - s) / (h0 + s)) / s;
}

}  // namespace

TEST_CASE("family A criterion holds for every positive amplitude") {
  CHECK(4.0 * pi > std::sqrt(2.0) * std::sqrt(5.0 / 8.0 + 4.0 * pi * pi));
}

TEST_CASE("make_initial_data") {
  const InitialDataSpec a1{Family::A, 1.0, {}};
  CHECK(initial_value(a1, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(initial_slope(a1, 0.5) == doctest::Approx(-4.0 * pi).epsilon(1e-15));

  const auto g = make_grid(1025);
  const Field u = make_initial_data(a1, g);
  CHECK(u[256] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(diff1(u)[512] + 4.0 * pi) <= 1e-6);

  for (double a : {0.3, 1.0, 4.0}) {
    const Field v = make_initial_data({Family::A, a, {}}, g);
    CHECK(initial_boundary_values({Family::A, a, {}}, v).max_abs() <= 1e-12);
    CHECK(v[0] == 0.0);
    CHECK(v[g->n() - 1] == 0.0);
    for (std::size_t i = 0; i < g->n(); ++i) REQUIRE(v[i] == -v[g->n() - 1 - i]);
  }

  const InitialDataSpec b{Family::B, 2.0, {}};
  CHECK(initial_boundary_values(b, make_initial_data(b, make_grid(256))).max_abs() <= 1e-12);
  CHECK(initial_value(b, 0.5) == doctest::Approx(2.0 * 0.0625 * std::sin(1.5 * pi)));

  CHECK_THROWS_AS(make_initial_data(a1, make_grid(1024)), ConfigError);
  CHECK_THROWS_AS(make_initial_data({Family::C, -1.0, {}}, make_grid(1024)), ConfigError);
  CHECK_THROWS_AS(make_initial_data({Family::C, 0.5, {}}, make_grid(129)), ConfigError);
  CHECK_THROWS_AS(make_initial_data({Family::CustomSamples, 0.0, {0.0, 1.0}}, make_grid(129)), ConfigError);
  try {
    make_initial_data(a1, make_grid(1024));
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("n must be odd for symmetric families") != std::string::npos);
  }

  CHECK(parse_family("a") == Family::A);
  CHECK(parse_family("custom") == Family::CustomSamples);
  CHECK_THROWS_AS(parse_family("D"), ConfigError);
}

TEST_CASE("blowup_time_bound") {
  const auto g = make_grid(1025);
  const Field u = make_initial_data({Family::A, 1.0, {}}, g);
  const auto crit = evaluate_criterion(u, 0.5);
  CHECK(crit.u0_h1 == doctest::Approx(6.3327).epsilon(1e-4));
  CHECK(crit.h0 == doctest::Approx(-12.5664).epsilon(1e-4));
  CHECK(crit.satisfied);
  REQUIRE(crit.t0_bound.has_value());
  CHECK(t0_closed_form(1.0) == doctest::Approx(0.19933686624738423).epsilon(1e-12));
  CHECK(*crit.t0_bound == doctest::Approx(0.19933686624738423).epsilon(1e-4));
  CHECK(*crit.t0_bound == doctest::Approx(0.1994).epsilon(1e-3));

  const Field c = make_initial_data({Family::C, -1.0, {}}, g);
  CHECK_FALSE(blowup_time_bound(c, 0.5).has_value());
  CHECK_FALSE(evaluate_criterion(c, 0.5).satisfied);

  for (double a : {0.5, 2.0, 3.0}) {
    const auto bound = blowup_time_bound(make_initial_data({Family::A, a, {}}, g), 0.5);
    REQUIRE(bound.has_value());
    CHECK(*bound > 0.0);
    CHECK(*bound == doctest::Approx(*crit.t0_bound / a).epsilon(1e-12));
    CHECK(t0_closed_form(a) == doctest::Approx(t0_closed_form(1.0) / a).epsilon(1e-12));
  }

  CHECK_THROWS_AS(evaluate_criterion(u, 0.3), ConfigError);
}

TEST_CASE("run_blowup_experiment") {
  SUBCASE("control run") {
    const auto out = run_blowup_experiment(family(Family::C, -0.1, 0.0, 129, 1.0), 0.5);
    CHECK(out.trajectory.termination == Termination::Completed);
    CHECK_FALSE(out.report.has_value());
    CHECK_FALSE(out.criterion.satisfied);
  }

  SUBCASE("breaking at a resolvable threshold") {
    SimConfig cfg = family(Family::A, 1.0, 0.0, 257, 0.3);
    cfg.blowup_threshold = 50.0;
    const auto out = run_blowup_experiment(cfg, 0.5);
    REQUIRE(out.report.has_value());
    const auto& r = *out.report;
    CHECK(r.criterion_satisfied);
    CHECK(r.hypothesis_maintained);
    REQUIRE(r.t0_bound.has_value());
    REQUIRE(r.bound_respected.has_value());
    CHECK(*r.bound_respected);
    CHECK(*r.t_est <= *r.t0_bound * (1.0 + kBoundSlack));
  }

  SUBCASE("k != 0 skips the bound comparison") {
    SimConfig cfg = family(Family::A, 1.0, 1.0, 129, 0.3);
    cfg.blowup_threshold = 30.0;
    const auto out = run_blowup_experiment(cfg, 0.5);
    CHECK_FALSE(out.riccati.applicable);
    if (out.report) {
      CHECK_FALSE(out.report->hypothesis_maintained);
      CHECK_FALSE(out.report->bound_respected.has_value());
    }
  }
}

TEST_CASE("complete_report") {
  BlowupReport report;
  report.t_est = 0.15;
  BlowupCriterion crit{-12.0, 6.0, true, 0.14};
  TrajectoryRecord traj;
  traj.rows.push_back(DiagnosticsRow{});
  SimConfig cfg;

  complete_report(report, crit, traj, cfg);
  CHECK(report.criterion_satisfied);
  CHECK(report.hypothesis_maintained);
  REQUIRE(report.bound_respected.has_value());
  CHECK_FALSE(*report.bound_respected);  // 0.15 > 0.14 * 1.02

  report.t_est = 0.1428;
  complete_report(report, crit, traj, cfg);
  CHECK(*report.bound_respected);

  report.t_est.reset();
  complete_report(report, crit, traj, cfg);
  CHECK_FALSE(report.bound_respected.has_value());
}

TEST_CASE("observed_order") {
  CHECK(observed_order(4e-4, 1e-4, 257, 513) == doctest::Approx(2.0));
  CHECK(observed_order(8e-3, 1e-3, 129, 257) == doctest::Approx(3.0));
}

TEST_CASE("convergence_study") {
  const SimConfig cfg = family(Family::C, -0.1, 0.0, 129, 0.5);
  const std::vector<std::size_t> two{129, 257};
  const std::vector<std::size_t> dup{129, 129, 257};
  const std::vector<std::size_t> even{128, 257, 513};
  const std::vector<std::size_t> down{513, 257, 129};
  CHECK_THROWS_AS(convergence_study(cfg, two), ConfigError);
  CHECK_THROWS_AS(convergence_study(cfg, dup), ConfigError);
  CHECK_THROWS_AS(convergence_study(cfg, even), ConfigError);
  CHECK_THROWS_AS(convergence_study(cfg, down), ConfigError);

  const std::vector<std::size_t> ns{129, 257, 513};
  const auto table = convergence_study(cfg, ns);
  REQUIRE(table.rows.size() == 3);
  REQUIRE(table.drift_orders.size() == 2);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(table.rows[i].n == ns[i]);
    CHECK(table.rows[i].termination == Termination::Completed);
    CHECK_FALSE(table.rows[i].t_est.has_value());
  }
  for (double p : table.drift_orders) CHECK(p >= 1.8);
  for (double p : table.helmholtz_orders) CHECK(p >= 1.8);
  CHECK_FALSE(table.t_est_spread.has_value());
}
