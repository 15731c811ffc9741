#ifndef SYNAD_NOISE_H_
#define SYNAD_NOISE_H_

#include <ostream>
#include <vector>

#include "synad/mixture.h"
#include "synad/risk_metrics.h"

namespace synad {

struct NoiseProbe {
  std::vector<double> thresholds;
  std::vector<double> probabilities;  // P_X(|f_P| <= t)
  // Least-squares slope of log P against log t over the points with P > 0;
  // NaN when fewer than two such points exist.
  double q_hat = 0.0;
  int fitted_points = 0;

  // True when P <= c0 t^q at every probed threshold.
  bool satisfies(const NoiseCondition& noise, double tolerance = 0.0) const;
};

// Log-spaced thresholds on [1e-3, 0.5].
std::vector<double> default_noise_thresholds(int count = 20);

// Throws InvalidParameterError for non-positive thresholds.
NoiseProbe noise_exponent_probe(const ProblemGrid& grid,
                                const std::vector<double>& thresholds);
NoiseProbe noise_exponent_probe(const MixtureProblem& problem,
                                const std::vector<double>& thresholds,
                                const QuadratureSpec& quadrature);

// Columns: threshold, probability.
void write_noise_probe_csv(std::ostream& out, const NoiseProbe& probe);

}  // namespace synad

#endif  // SYNAD_NOISE_H_
