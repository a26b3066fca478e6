#include "gch/initial_data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "gch/errors.hpp"

namespace gch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Family A evaluated in the centered coordinate y = x - 1/2 so that paired
// nodes give exactly opposite values.
double family_a(double y) { return -std::sin(kTwoPi * y) - 0.5 * std::sin(2.0 * kTwoPi * y); }

double family_a_slope(double y) {
  return -kTwoPi * std::cos(kTwoPi * y) - kTwoPi * std::cos(2.0 * kTwoPi * y);
}

double family_b(double x) {
  const double s = x * (1.0 - x);
  return s * s * std::sin(1.5 * kTwoPi * x);
}

double family_b_slope(double x) {
  const double s = x * (1.0 - x);
  const double ds = 1.0 - 2.0 * x;
  return 2.0 * s * ds * std::sin(1.5 * kTwoPi * x) + s * s * 1.5 * kTwoPi * std::cos(1.5 * kTwoPi * x);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::CustomSamples: return "custom";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "a") return Family::A;
  if (t == "b") return Family::B;
  if (t == "c") return Family::C;
  if (t == "custom" || t == "custom_samples") return Family::CustomSamples;
  throw ConfigError("unknown initial-data family '" + s + "' (expected A, B, C or custom)");
}

bool is_symmetric_family(Family f) { return f == Family::A || f == Family::C; }

double initial_value(const InitialDataSpec& spec, double x) {
  switch (spec.family) {
    case Family::A:
    case Family::C: return spec.amplitude * family_a(x - 0.5);
    case Family::B: return spec.amplitude * family_b(x);
    case Family::CustomSamples: break;
  }
  throw ConfigError("custom samples have no closed form");
}

double initial_slope(const InitialDataSpec& spec, double x) {
  switch (spec.family) {
    case Family::A:
    case Family::C: return spec.amplitude * family_a_slope(x - 0.5);
    case Family::B: return spec.amplitude * family_b_slope(x);
    case Family::CustomSamples: break;
  }
  throw ConfigError("custom samples have no closed form");
}

Field make_initial_data(const InitialDataSpec& spec, const GridPtr& grid) {
  const std::size_t n = grid->n();
  if (is_symmetric_family(spec.family) && n % 2 == 0) {
    throw ConfigError("n must be odd for symmetric families (got n = " + std::to_string(n) + ")");
  }
  if (spec.family == Family::C && !(spec.amplitude < 0.0)) {
    throw ConfigError("family C requires a negative amplitude");
  }
  if (!std::isfinite(spec.amplitude)) throw ConfigError("amplitude must be finite");

  std::vector<double> v(n);
  switch (spec.family) {
    case Family::A:
    case Family::C: {
      const double span = 2.0 * static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const double y = static_cast<double>(2 * static_cast<long long>(i) - static_cast<long long>(n - 1)) / span;
        v[i] = spec.amplitude * family_a(y);
      }
      break;
    }
    case Family::B:
      for (std::size_t i = 0; i < n; ++i) v[i] = spec.amplitude * family_b(grid->x(i));
      break;
    case Family::CustomSamples:
      if (spec.samples.size() != n) {
        throw ConfigError("custom initial data has " + std::to_string(spec.samples.size()) +
                          " samples, grid has " + std::to_string(n) + " nodes");
      }
      v = spec.samples;
      break;
  }
  if (spec.family != Family::CustomSamples) {
    // analytic zeros
    v.front() = 0.0;
    v.back() = 0.0;
  }
  Field u(grid, std::move(v));
  if (!u.all_finite()) throw ConfigError("initial data contains non-finite values");
  return u;
}

BoundaryValues initial_boundary_values(const InitialDataSpec& spec, const Field& u0) {
  if (spec.family == Family::CustomSamples) return boundary_values(u0);
  BoundaryValues b;
  b.u0 = u0[0];
  b.u1 = u0[u0.size() - 1];
  b.ux0 = initial_slope(spec, 0.0);
  b.ux1 = initial_slope(spec, 1.0);
  return b;
}

}  // namespace gch
