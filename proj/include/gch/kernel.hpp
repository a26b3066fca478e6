#pragma once

#include <vector>

#include "gch/grid.hpp"

namespace gch {

/// G(xi) = cosh(xi - floor(xi) - 1/2) / (2 sinh(1/2)), the periodic Green's
/// function of (1 - d^2/dx^2) on the unit circle.
double kernel_value(double xi);

/// G sampled at the lag multiples j*h, j = 0..n-1, plus trapezoid weights.
struct KernelTable {
  GridPtr grid;
  std::vector<double> g_values;
  std::vector<double> quad_weights;
};

/// Lag values are computed from |2j - (n-1)| so g_j == g_{n-1-j} bit for bit.
KernelTable make_kernel_table(GridPtr grid);

/// (G * f)(x_i) = int_0^1 G(x_i - y) f(y) dy by the trapezoidal rule, with
/// the lag reduced periodically. O(n^2).
Field convolve(const KernelTable& kernel, const Field& f);

/// max |w - diff2(w) - f| over nodes 3 .. n-4. Certifies (1 - d_xx) w = f.
double helmholtz_residual(const Field& f, const Field& w);

}  // namespace gch
