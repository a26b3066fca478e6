#include "gch/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gch/errors.hpp"

namespace gch {

namespace {

Stencil build_stencil(int order, int half_width, int boundary_width) {
  Stencil s;
  s.order = order;
  s.half_width = half_width;
  s.boundary_width = boundary_width;

  std::vector<double> offsets(2 * half_width + 1);
  std::iota(offsets.begin(), offsets.end(), static_cast<double>(-half_width));
  s.interior = fd_weights(0.0, offsets, order);

  std::vector<double> window(boundary_width);
  std::iota(window.begin(), window.end(), 0.0);
  for (int r = 0; r < half_width; ++r) {
    s.boundary.push_back(fd_weights(static_cast<double>(r), window, order));
  }
  return s;
}

Field apply(const Stencil& s, const Field& f) {
  const Grid& g = *f.grid();
  const std::size_t n = g.n();
  const double scale = 1.0 / std::pow(g.h(), s.order);
  const double mirror = (s.order % 2 == 0) ? 1.0 : -1.0;
  const auto in = f.values();
  std::vector<double> out(n, 0.0);

  const std::size_t hw = static_cast<std::size_t>(s.half_width);
  for (std::size_t r = 0; r < hw; ++r) {
    const auto& w = s.boundary[r];
    double left = 0.0, right = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      left += w[j] * in[j];
      right += w[j] * in[n - 1 - j];
    }
    out[r] = left * scale;
    out[n - 1 - r] = mirror * right * scale;
  }
  for (std::size_t i = hw; i + hw < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.interior.size(); ++j) acc += s.interior[j] * in[i - hw + j];
    out[i] = acc * scale;
  }
  return Field(f.grid(), std::move(out));
}

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return Field(a.grid(), std::move(v));
}

}  // namespace

std::vector<double> fd_weights(double z, std::span<const double> x, int order) {
  const std::size_t n = x.size();
  const int m = order;
  // c[i][k]: weight of node i for derivative k
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

GridPtr make_grid(std::size_t n) {
  if (n < Grid::kMinNodes) {
    throw ConfigError("grid needs at least " + std::to_string(Grid::kMinNodes) + " nodes, got " +
                      std::to_string(n));
  }
  auto g = std::shared_ptr<Grid>(new Grid());
  g->h_ = 1.0 / static_cast<double>(n - 1);
  g->nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g->nodes_[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  g->nodes_.front() = 0.0;
  g->nodes_.back() = 1.0;
  g->d1_ = build_stencil(1, 2, 5);
  g->d2_ = build_stencil(2, 2, 6);
  g->d3_ = build_stencil(3, 3, 7);
  return g;
}

std::size_t Grid::node_index(double x) const {
  const double pos = x / h_;
  const auto i = static_cast<long long>(std::llround(pos));
  if (i < 0 || i >= static_cast<long long>(n()) || std::abs(nodes_[i] - x) > 1e-12) {
    throw ConfigError("x = " + std::to_string(x) + " is not a grid node for n = " +
                      std::to_string(n()));
  }
  return static_cast<std::size_t>(i);
}

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->n(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->n()) {
    throw StructuralError("field has " + std::to_string(values_.size()) + " values for a grid of " +
                          std::to_string(grid_->n()) + " nodes");
  }
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::min() const { return *std::min_element(values_.begin(), values_.end()); }
double Field::max() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_grid(const Field& a, const Field& b) {
  if (!a.grid() || !b.grid() || a.grid()->n() != b.grid()->n()) {
    throw StructuralError("fields are defined on different grids");
  }
}

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}
Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}
Field operator*(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}
Field operator*(double s, const Field& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= s;
  return Field(a.grid(), std::move(v));
}

Field diff1(const Field& f) { return apply(f.grid()->first(), f); }
Field diff2(const Field& f) { return apply(f.grid()->second(), f); }
Field diff3(const Field& f) { return apply(f.grid()->third(), f); }

std::vector<double> trapezoid_weights(const Grid& grid) {
  std::vector<double> w(grid.n(), grid.h());
  w.front() = w.back() = 0.5 * grid.h();
  return w;
}

double integrate(const Field& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  double interior = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) interior += v[i];
  return f.grid()->h() * (interior + 0.5 * (v[0] + v[n - 1]));
}

double BoundaryValues::max_abs() const {
  return std::max({std::abs(u0), std::abs(u1), std::abs(ux0), std::abs(ux1)});
}

BoundaryValues boundary_values(const Field& u) {
  static const std::vector<double> weights = [] {
    std::vector<double> x(7);
    std::iota(x.begin(), x.end(), 0.0);
    return fd_weights(0.0, x, 1);
  }();
  const auto v = u.values();
  const std::size_t n = v.size();
  const double inv_h = 1.0 / u.grid()->h();
  BoundaryValues b;
  b.u0 = v[0];
  b.u1 = v[n - 1];
  for (std::size_t j = 0; j < weights.size(); ++j) {
    b.ux0 += weights[j] * v[j];
    b.ux1 -= weights[j] * v[n - 1 - j];
  }
  b.ux0 *= inv_h;
  b.ux1 *= inv_h;
  return b;
}

}  // namespace gch
