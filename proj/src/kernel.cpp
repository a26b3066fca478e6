#include "gch/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gch/errors.hpp"

namespace gch {

namespace {
const double kNorm = 1.0 / (2.0 * std::sinh(0.5));
}

double kernel_value(double xi) {
  const double frac = xi - std::floor(xi);
  return std::cosh(frac - 0.5) * kNorm;
}

KernelTable make_kernel_table(GridPtr grid) {
  const std::size_t n = grid->n();
  const double span = 2.0 * static_cast<double>(n - 1);
  KernelTable t;
  t.g_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const long long twice_offset = 2 * static_cast<long long>(j) - static_cast<long long>(n - 1);
    t.g_values[j] = std::cosh(static_cast<double>(std::llabs(twice_offset)) / span) * kNorm;
  }
  t.quad_weights = trapezoid_weights(*grid);
  t.grid = std::move(grid);
  return t;
}

Field convolve(const KernelTable& kernel, const Field& f) {
  if (!kernel.grid || !f.grid() || kernel.grid->n() != f.grid()->n()) {
    throw StructuralError("kernel table and field are defined on different grids");
  }
  const std::size_t n = f.size();
  const auto in = f.values();
  const double* g = kernel.g_values.data();

  std::vector<double> weighted(n);
  for (std::size_t j = 0; j < n; ++j) weighted[j] = kernel.quad_weights[j] * in[j];

  // The lag (i - j) reduces to i - j for j <= i and to i - j + n - 1 for j > i.
  // With the reflection g_l = g_{n-1-l} both sums run forward through g.
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* lower = g + (n - 1 - i);
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += lower[j] * weighted[j];
    for (std::size_t j = i + 1; j < n; ++j) acc += g[j - i] * weighted[j];
    out[i] = acc;
  }
  return Field(f.grid(), std::move(out));
}

double helmholtz_residual(const Field& f, const Field& w) {
  require_same_grid(f, w);
  const Field w_xx = diff2(w);
  const std::size_t n = f.size();
  double worst = 0.0;
  for (std::size_t i = 3; i + 3 < n; ++i) {
    worst = std::max(worst, std::abs(w[i] - w_xx[i] - f[i]));
  }
  return worst;
}

}  // namespace gch
