#include "synad/quadrature.h"

#include <sstream>

#include "synad/errors.h"
#include "synad/rng.h"

namespace synad {

QuadratureSpec QuadratureSpec::grid(std::int64_t points_per_axis) {
  if (points_per_axis < 1)
    throw InvalidParameterError("grid needs at least one point per axis");
  QuadratureSpec spec;
  spec.kind = Kind::kGrid;
  spec.points_per_axis = points_per_axis;
  return spec;
}

QuadratureSpec QuadratureSpec::monte_carlo(std::int64_t samples,
                                           std::uint64_t seed) {
  if (samples < 1)
    throw InvalidParameterError("Monte Carlo needs at least one sample");
  QuadratureSpec spec;
  spec.kind = Kind::kMonteCarlo;
  spec.samples = samples;
  spec.seed = seed;
  return spec;
}

QuadratureSpec QuadratureSpec::default_for(int dimension) {
  switch (dimension) {
    case 1:
      return grid(100000);
    case 2:
      return grid(1000);
    case 3:
      return grid(100);
    default:
      return monte_carlo(1000000, 0);
  }
}

std::string QuadratureSpec::describe() const {
  std::ostringstream out;
  if (kind == Kind::kGrid)
    out << "grid:" << points_per_axis;
  else
    out << "mc:" << samples << ":seed=" << seed;
  return out.str();
}

Vector midpoint_grid(std::int64_t n) {
  Vector out(n);
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return out;
}

QuadratureRule::QuadratureRule(const QuadratureSpec& spec, int dimension)
    : spec_(spec) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  if (spec.kind == QuadratureSpec::Kind::kGrid) {
    const std::int64_t per_axis = spec.points_per_axis;
    std::int64_t total = 1;
    for (int j = 0; j < dimension; ++j) {
      if (total > (std::int64_t{1} << 40) / per_axis)
        throw InvalidParameterError("tensor grid too large; use Monte Carlo");
      total *= per_axis;
    }
    const Vector axis = midpoint_grid(per_axis);
    points_.resize(total, dimension);
    for (std::int64_t i = 0; i < total; ++i) {
      std::int64_t rest = i;
      // Last coordinate varies fastest.
      for (int j = dimension - 1; j >= 0; --j) {
        points_(i, j) = axis[rest % per_axis];
        rest /= per_axis;
      }
    }
  } else {
    Rng rng(spec.seed, 0x5155414452ULL);
    points_.resize(spec.samples, dimension);
    for (std::int64_t i = 0; i < spec.samples; ++i)
      for (int j = 0; j < dimension; ++j) points_(i, j) = rng.uniform();
  }
}

double QuadratureRule::spacing() const {
  if (spec_.kind != QuadratureSpec::Kind::kGrid) return 0.0;
  return 1.0 / static_cast<double>(spec_.points_per_axis);
}

}  // namespace synad
