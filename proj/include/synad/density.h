#ifndef SYNAD_DENSITY_H_
#define SYNAD_DENSITY_H_

#include <span>
#include <string>
#include <vector>

#include "synad/quadrature.h"
#include "synad/rng.h"
#include "synad/types.h"

namespace synad {

// A probability density on [0,1]^d with respect to the uniform measure.
//
// Densities are immutable values and are evaluated lazily; normalization is
// not enforced at construction (see check_density).
class DensityModel {
 public:
  enum class Form { kUniform, kHat1d, kProductHat, kTabulated };

  static DensityModel uniform(int dimension);
  // (1/w) max{1 - |x - c|/w, 0}; the support [c - w, c + w] must lie in
  // [0, 1].
  static DensityModel hat_1d(double center, double half_width);
  // Product of per-axis hat_1d factors.
  static DensityModel product_hat(std::vector<double> centers,
                                  std::vector<double> half_widths);
  // The centered d-dimensional hat of the product-hat example, shifted by
  // `offset`. In the unit cube the centered hat has center (1/2, ..., 1/2)
  // and half-widths (1/4, 1/2, ..., 1/2); it is the image of
  // prod_i max{2 - 4|u_i|, 0} under u_1 = 2 x_1 - 1, u_i = x_i - 1/2 (i > 1),
  // rescaled by the Jacobian so that it stays a density.
  static DensityModel shifted_hat(const std::vector<double>& offset);
  // Multilinear interpolation on a tensor grid. `axes[j]` holds the sorted
  // grid coordinates of axis j; `values` is in row-major order with the last
  // axis fastest. Points outside the grid's bounding box evaluate to 0.
  static DensityModel tabulated(std::vector<std::vector<double>> axes,
                                std::vector<double> values);
  // CSV with header x1..xd,value; the rows must form a full tensor grid.
  static DensityModel load_tabulated_csv(const std::string& path);

  int dimension() const { return dimension_; }
  Form form() const { return form_; }

  double operator()(std::span<const double> x) const;
  double operator()(double x) const;

  // Upper bound on the density (exact maximum for every form).
  double sup_value() const;

  // One draw from the density. Hats use exact inverse-CDF sampling per axis;
  // tabulated densities use rejection against sup_value().
  void sample(Rng& rng, std::span<double> out) const;
  Matrix sample(Rng& rng, Eigen::Index count) const;

  std::string describe() const;

 private:
  DensityModel(Form form, int dimension) : form_(form), dimension_(dimension) {}

  double tabulated_value(std::span<const double> x) const;

  Form form_;
  int dimension_;
  std::vector<double> centers_;
  std::vector<double> half_widths_;
  std::vector<std::vector<double>> axes_;
  std::vector<double> values_;
};

struct DensityCheck {
  double integral = 0.0;
  double min_value = 0.0;
  bool nonnegative = false;
  bool normalized = false;  // |integral - 1| <= tolerance
};

DensityCheck check_density(const DensityModel& density,
                           const QuadratureSpec& quadrature,
                           double tolerance = 1e-4);

// Raw product hat prod_i max{2 - 4|u_i|, 0} on [-1/2, 1/2]^d, before the
// affine map into the unit cube.
double example2_raw_hat(std::span<const double> u);

}  // namespace synad

#endif  // SYNAD_DENSITY_H_
