#pragma once

#include <string>
#include <vector>

#include "gch/grid.hpp"

namespace gch {

/// A: a (sin 2 pi x - sin(4 pi x) / 2), odd about x = 1/2, slope -4 pi a there.
/// B: a x^2 (1-x)^2 sin 3 pi x, no symmetry.
/// C: family A with a < 0 (positive slope at x = 1/2, no blow-up criterion).
enum class Family { A, B, C, CustomSamples };

struct InitialDataSpec {
  Family family = Family::A;
  double amplitude = 1.0;
  std::vector<double> samples;  // CustomSamples only, one value per node
};

std::string to_string(Family f);
/// Accepts "A", "B", "C", "custom" (case-insensitive). Throws ConfigError.
Family parse_family(const std::string& s);

/// True for the families sampled symmetrically about x = 1/2 (n must be odd).
bool is_symmetric_family(Family f);

/// Throws ConfigError for even n with a symmetric family, a non-negative
/// amplitude with family C, or a sample count that does not match the grid.
Field make_initial_data(const InitialDataSpec& spec, const GridPtr& grid);

/// Closed-form u0(x) and u0'(x); not available for CustomSamples.
double initial_value(const InitialDataSpec& spec, double x);
double initial_slope(const InitialDataSpec& spec, double x);

/// u(0), u(1), u_x(0), u_x(1): closed form for the analytic families, one-sided
/// finite differences for custom samples.
BoundaryValues initial_boundary_values(const InitialDataSpec& spec, const Field& u0);

}  // namespace gch
