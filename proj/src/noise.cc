#include "synad/noise.h"

#include <cmath>
#include <limits>

#include "synad/csv.h"
#include "synad/errors.h"

namespace synad {

bool NoiseProbe::satisfies(const NoiseCondition& noise, double tolerance) const {
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    if (probabilities[i] > noise.c0 * std::pow(thresholds[i], noise.q) + tolerance)
      return false;
  return true;
}

std::vector<double> default_noise_thresholds(int count) {
  if (count < 2) throw InvalidParameterError("need at least two thresholds");
  const double lo = std::log(1e-3), hi = std::log(0.5);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    t[static_cast<std::size_t>(i)] = std::exp(lo + (hi - lo) * i / (count - 1));
  return t;
}

NoiseProbe noise_exponent_probe(const ProblemGrid& grid,
                                const std::vector<double>& thresholds) {
  NoiseProbe probe;
  probe.thresholds = thresholds;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double t : thresholds) {
    if (!(t > 0.0)) throw InvalidParameterError("thresholds must be positive");
    const double p = std::min(1.0, grid.margin_mass(t));
    probe.probabilities.push_back(p);
    if (p > 0.0) {
      const double x = std::log(t), y = std::log(p);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++probe.fitted_points;
    }
  }
  const double n = probe.fitted_points;
  const double denom = n * sxx - sx * sx;
  probe.q_hat = (probe.fitted_points >= 2 && denom > 0.0)
                    ? (n * sxy - sx * sy) / denom
                    : std::numeric_limits<double>::quiet_NaN();
  return probe;
}

NoiseProbe noise_exponent_probe(const MixtureProblem& problem,
                                const std::vector<double>& thresholds,
                                const QuadratureSpec& quadrature) {
  return noise_exponent_probe(ProblemGrid(problem, quadrature), thresholds);
}

void write_noise_probe_csv(std::ostream& out, const NoiseProbe& probe) {
  CsvWriter writer(out);
  writer.row({"threshold", "probability"});
  for (std::size_t i = 0; i < probe.thresholds.size(); ++i)
    writer.row({format_double(probe.thresholds[i]), format_double(probe.probabilities[i])});
}

}  // namespace synad
