#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace gch {

/// Finite-difference weights for one derivative order: a centered interior
/// stencil plus explicit one-sided rows for the nodes near x = 0. Rows for
/// the nodes near x = 1 are the mirror images, so odd/even symmetry about
/// x = 1/2 is preserved exactly.
struct Stencil {
  int order = 1;
  int half_width = 2;                          // interior stencil spans [-half_width, half_width]
  std::vector<double> interior;                // 2 * half_width + 1 weights, unscaled
  std::vector<std::vector<double>> boundary;   // rows for nodes 0 .. half_width-1
  int boundary_width = 5;                      // every boundary row covers nodes [0, boundary_width)
};

/// Uniform grid x_i = i * h on [0, 1].
class Grid {
 public:
  static constexpr std::size_t kMinNodes = 9;

  std::size_t n() const { return nodes_.size(); }
  double h() const { return h_; }
  double x(std::size_t i) const { return nodes_[i]; }
  std::span<const double> nodes() const { return nodes_; }

  /// Index of the node equal to `x` within 1e-12, or throws ConfigError.
  std::size_t node_index(double x) const;

  const Stencil& first() const { return d1_; }
  const Stencil& second() const { return d2_; }
  const Stencil& third() const { return d3_; }

 private:
  friend std::shared_ptr<const Grid> make_grid(std::size_t n);
  Grid() = default;

  double h_ = 0.0;
  std::vector<double> nodes_;
  Stencil d1_, d2_, d3_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws ConfigError for n < 9.
GridPtr make_grid(std::size_t n);

/// Samples of a real function on a grid.
class Field {
 public:
  Field() = default;
  explicit Field(GridPtr grid);  // zero field
  Field(GridPtr grid, std::vector<double> values);

  template <class F>
  static Field sample(GridPtr grid, F&& f) {
    std::vector<double> v(grid->n());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->x(i));
    return Field(std::move(grid), std::move(v));
  }

  const GridPtr& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;
  double max_abs() const;
  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws StructuralError unless both fields live on grids of the same size.
void require_same_grid(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

/// Fourth-order first derivative (5-point centered, 5-point one-sided at the
/// two nodes next to each end).
Field diff1(const Field& f);
/// Fourth-order second derivative (5-point centered, 6-point one-sided).
Field diff2(const Field& f);
/// Fourth-order third derivative (7-point centered, 7-point one-sided).
Field diff3(const Field& f);

/// Trapezoidal weights: h/2 at the endpoints, h elsewhere.
std::vector<double> trapezoid_weights(const Grid& grid);
/// Trapezoidal quadrature of f over [0, 1].
double integrate(const Field& f);

/// Weights of the derivative of order `order` at z for nodes `x`
/// (Fornberg's recursion).
std::vector<double> fd_weights(double z, std::span<const double> x, int order);

/// One-sided sixth-order estimates of u_x at both ends. Used to test
/// membership in H^2_{0,1} for sampled data.
struct BoundaryValues {
  double u0 = 0.0, u1 = 0.0, ux0 = 0.0, ux1 = 0.0;
  double max_abs() const;
};
BoundaryValues boundary_values(const Field& u);

}  // namespace gch
