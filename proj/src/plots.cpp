#include "gch/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "gch/dynamics.hpp"
#include "gch/errors.hpp"

namespace gch {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMargin = 60.0;

// Maps data coordinates into the plotting rectangle.
class Canvas {
 public:
  Canvas(std::string title, double x_lo, double x_hi, double y_lo, double y_hi)
      : x_lo_(x_lo), x_hi_(x_hi > x_lo ? x_hi : x_lo + 1.0), y_lo_(y_lo),
        y_hi_(y_hi > y_lo ? y_hi : y_lo + 1.0) {
    body_ << "<rect x='" << kMargin << "' y='" << kMargin << "' width='" << kWidth - 2 * kMargin
          << "' height='" << kHeight - 2 * kMargin << "' fill='none' stroke='black'/>\n";
    body_ << "<text x='" << kWidth / 2 << "' y='30' text-anchor='middle' font-size='16'>" << title
          << "</text>\n";
    label(kMargin, kHeight - kMargin + 18, x_lo_, "start");
    label(kWidth - kMargin, kHeight - kMargin + 18, x_hi_, "end");
    label(kMargin - 6, kHeight - kMargin, y_lo_, "end");
    label(kMargin - 6, kMargin + 10, y_hi_, "end");
  }

  double px(double x) const { return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - 2 * kMargin); }
  double py(double y) const {
    const double c = std::clamp(y, y_lo_, y_hi_);
    return kHeight - kMargin - (c - y_lo_) / (y_hi_ - y_lo_) * (kHeight - 2 * kMargin);
  }

  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
                const std::string& extra = "") {
    body_ << "<polyline fill='none' stroke='" << color << "' stroke-width='1.2' " << extra << " points='";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
      body_ << px(xs[i]) << ',' << py(ys[i]) << ' ';
    }
    body_ << "'/>\n";
  }

  void vertical(double x, const std::string& id, const std::string& color, const std::string& text) {
    body_ << "<line id='" << id << "' x1='" << px(x) << "' x2='" << px(x) << "' y1='" << kMargin
          << "' y2='" << kHeight - kMargin << "' stroke='" << color << "' stroke-dasharray='6,4'/>\n";
    body_ << "<text x='" << px(x) + 4 << "' y='" << kMargin + 16 << "' font-size='12' fill='" << color
          << "'>" << text << "</text>\n";
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "' font-family='sans-serif'>\n"
        << body_.str() << "</svg>\n";
  }

 private:
  void label(double x, double y, double v, const char* anchor) {
    body_ << "<text x='" << x << "' y='" << y << "' font-size='11' text-anchor='" << anchor << "'>" << v
          << "</text>\n";
  }

  double x_lo_, x_hi_, y_lo_, y_hi_;
  std::ostringstream body_;
};

void waterfall(const TrajectoryRecord& traj, const std::filesystem::path& path) {
  const std::size_t max_curves = 40;
  const std::size_t stride = std::max<std::size_t>(1, traj.snapshots.size() / max_curves);
  double amp = 0.0;
  for (const auto& s : traj.snapshots) amp = std::max(amp, s.u.max_abs());
  amp = amp > 0.0 ? amp : 1.0;
  const double t_last = std::max(traj.snapshots.back().t, 1e-300);
  const double lift = 4.0 * amp;  // total vertical offset across the run

  Canvas c("u(x,t) waterfall", 0.0, 1.0, -amp, amp + lift);
  for (std::size_t i = 0; i < traj.snapshots.size(); i += stride) {
    const auto& s = traj.snapshots[i];
    const auto nodes = s.u.grid()->nodes();
    std::vector<double> xs(nodes.begin(), nodes.end());
    std::vector<double> ys(s.u.size());
    const double offset = lift * s.t / t_last;
    for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = s.u[j] + offset;
    c.polyline(xs, ys, "steelblue");
  }
  c.write(path);
}

void energy(const TrajectoryRecord& traj, const std::filesystem::path& path) {
  std::vector<double> t, e;
  for (const auto& r : traj.rows) {
    t.push_back(r.t);
    e.push_back(r.energy);
  }
  const double e0 = e.front();
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  const double pad = std::max(1e-12, 0.05 * (*hi - *lo));
  Canvas c("H1 energy E(t)", t.front(), t.back(), *lo - pad, *hi + pad);
  c.polyline({t.front(), t.back()}, {e0, e0}, "gray", "stroke-dasharray='4,3' id='reference-E0'");
  c.polyline(t, e, "darkred");
  c.write(path);
}

void gradient(const TrajectoryRecord& traj, const std::optional<BlowupReport>& report,
              std::optional<double> t0_bound, const std::filesystem::path& path) {
  std::vector<double> t, h;
  for (const auto& r : traj.rows) {
    t.push_back(r.t);
    h.push_back(r.min_ux);
  }
  double t_hi = t.back();
  if (report && report->t_est) t_hi = std::max(t_hi, *report->t_est);
  if (t0_bound) t_hi = std::max(t_hi, *t0_bound);
  const double y_lo = std::min(*std::min_element(h.begin(), h.end()), -1.0);
  const double y_hi = std::max(*std::max_element(h.begin(), h.end()), 0.0);

  Canvas c("min u_x(t)", 0.0, t_hi * 1.05, y_lo * 1.1, y_hi + 1.0);
  c.polyline(t, h, "black");
  if (report && report->t_est && report->fit_slope) {
    // 1/h = slope (t - T_est)
    const double slope = *report->fit_slope;
    const double t_est = *report->t_est;
    const std::size_t fit_begin = t.size() > kBlowupFitSamples ? t.size() - kBlowupFitSamples - 1 : 0;
    std::vector<double> ft, fh;
    const double t_a = t[fit_begin];
    for (int i = 0; i <= 200; ++i) {
      const double ti = t_a + (t_est - t_a) * i / 201.0;
      ft.push_back(ti);
      fh.push_back(1.0 / (slope * (ti - t_est)));
    }
    c.polyline(ft, fh, "darkorange", "id='fit-inverse-h'");
    c.vertical(t_est, "marker-T_est", "darkorange", "T_est");
  }
  if (t0_bound) c.vertical(*t0_bound, "marker-T0", "green", "T0");
  c.write(path);
}

}  // namespace

PlotResult emit_plots(const TrajectoryRecord& traj, const std::filesystem::path& dir,
                      const std::optional<BlowupReport>& report, std::optional<double> t0_bound) {
  PlotResult result;
  if (traj.rows.empty() || traj.snapshots.empty()) {
    result.warnings.push_back("empty trajectory, plots skipped");
    return result;
  }
  if (!t0_bound && report) t0_bound = report->t0_bound;

  auto attempt = [&](const char* name, auto&& draw) {
    const auto path = dir / name;
    try {
      draw(path);
      result.written.push_back(path);
    } catch (const std::exception& e) {
      result.warnings.push_back(std::string(name) + ": " + e.what());
    }
  };
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  attempt("waterfall.svg", [&](const auto& p) { waterfall(traj, p); });
  attempt("energy.svg", [&](const auto& p) { energy(traj, p); });
  attempt("gradient.svg", [&](const auto& p) { gradient(traj, report, t0_bound, p); });
  return result;
}

}  // namespace gch
