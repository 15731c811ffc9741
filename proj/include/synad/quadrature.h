#ifndef SYNAD_QUADRATURE_H_
#define SYNAD_QUADRATURE_H_

#include <cstdint>
#include <string>

#include "synad/types.h"

namespace synad {

// How integrals against the uniform measure on [0,1]^d are approximated.
// Tensor midpoint grids for d <= 3, Monte Carlo above that.
struct QuadratureSpec {
  enum class Kind { kGrid, kMonteCarlo };

  Kind kind = Kind::kGrid;
  std::int64_t points_per_axis = 100000;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 0;

  static QuadratureSpec grid(std::int64_t points_per_axis);
  static QuadratureSpec monte_carlo(std::int64_t samples, std::uint64_t seed);
  // 1e5 points in 1D, 1000^2 in 2D, 100^3 in 3D, 1e6 MC samples otherwise.
  static QuadratureSpec default_for(int dimension);

  std::string describe() const;
};

// Materialized equal-weight rule.
class QuadratureRule {
 public:
  QuadratureRule(const QuadratureSpec& spec, int dimension);

  const Matrix& points() const { return points_; }
  Eigen::Index size() const { return points_.rows(); }
  double weight() const { return 1.0 / static_cast<double>(points_.rows()); }
  int dimension() const { return static_cast<int>(points_.cols()); }
  const QuadratureSpec& spec() const { return spec_; }
  // Grid spacing along one axis (0 for Monte Carlo rules).
  double spacing() const;

 private:
  QuadratureSpec spec_;
  Matrix points_;
};

// Midpoints (i + 1/2)/n of a 1D grid.
Vector midpoint_grid(std::int64_t n);

}  // namespace synad

#endif  // SYNAD_QUADRATURE_H_
