#include "synad/mixture.h"

#include <limits>

#include "synad/errors.h"

namespace synad {

MixtureProblem::MixtureProblem(std::shared_ptr<const DensityModel> h1,
                               std::shared_ptr<const DensityModel> h_minus,
                               double s, double s_tilde)
    : h1_(std::move(h1)), h_minus_(std::move(h_minus)), s_(s), s_tilde_(s_tilde) {
  if (!h1_ || !h_minus_) throw InvalidParameterError("densities must be set");
  if (h1_->dimension() != h_minus_->dimension())
    throw InvalidParameterError("h1 and h_minus dimensions differ");
  if (!(s > 0.0 && s < 1.0)) throw InvalidParameterError("s must be in (0, 1)");
  if (!(s_tilde >= 0.0 && s_tilde <= 1.0))
    throw InvalidParameterError("s_tilde must be in [0, 1]");
}

double MixtureProblem::h2(std::span<const double> x) const {
  if (s_tilde_ == 0.0) return 1.0;
  return s_tilde_ * (*h_minus_)(x) + (1.0 - s_tilde_);
}

MixtureProblem MixtureProblem::with_weights(double s, double s_tilde) const {
  return MixtureProblem(h1_, h_minus_, s, s_tilde);
}

LevelSetSpec::LevelSetSpec(double rho_in) : rho(rho_in) {
  if (!(rho > 0.0)) throw InvalidParameterError("rho must be positive");
}

NoiseCondition::NoiseCondition(double q_in, double c0_in) : q(q_in), c0(c0_in) {
  if (!(q >= 0.0)) throw InvalidParameterError("noise exponent q must be >= 0");
  if (!(c0 > 0.0)) throw InvalidParameterError("noise constant c0 must be > 0");
}

double regression_from_densities(double h1, double h2, double s) {
  const double normal = s * h1;
  const double anomaly = (1.0 - s) * h2;
  const double denom = normal + anomaly;
  if (!(denom > 0.0))
    throw UndefinedPointError("regression function undefined where h1 = h2 = 0");
  return (normal - anomaly) / denom;
}

double class_prob_from_densities(double h1, double h2, double s) {
  const double normal = s * h1;
  const double denom = normal + (1.0 - s) * h2;
  if (!(denom > 0.0))
    throw UndefinedPointError("class probability undefined where h1 = h2 = 0");
  return normal / denom;
}

int bayes_from_densities(double h1, double h2, double s) {
  return s * h1 - (1.0 - s) * h2 >= 0.0 ? 1 : -1;
}

bool level_set_from_densities(double h1, double h2, double rho) {
  if (h2 == 0.0) {
    if (h1 > 0.0) return true;
    throw UndefinedPointError("level set undefined where h1 = h2 = 0");
  }
  return h1 / h2 >= rho;
}

double regression_function(const MixtureProblem& problem,
                           std::span<const double> x) {
  return regression_from_densities(problem.h1()(x), problem.h2(x), problem.s());
}

double conditional_class_prob(const MixtureProblem& problem,
                              std::span<const double> x) {
  return class_prob_from_densities(problem.h1()(x), problem.h2(x), problem.s());
}

int bayes_classifier(const MixtureProblem& problem, std::span<const double> x) {
  return bayes_from_densities(problem.h1()(x), problem.h2(x), problem.s());
}

bool level_set_indicator(const MixtureProblem& problem, const LevelSetSpec& spec,
                         std::span<const double> x) {
  return level_set_from_densities(problem.h1()(x), problem.h2(x), spec.rho);
}

MixtureProblem example1_problem(double s, double s_tilde) {
  return MixtureProblem(
      std::make_shared<const DensityModel>(DensityModel::hat_1d(0.75, 0.25)),
      std::make_shared<const DensityModel>(DensityModel::hat_1d(0.25, 0.25)), s,
      s_tilde);
}

MixtureProblem example2_problem(int dimension, double s, double s_tilde) {
  if (dimension < 1) throw InvalidParameterError("dimension must be >= 1");
  std::vector<double> offset(static_cast<std::size_t>(dimension), 0.0);
  offset[0] = -0.25;
  auto h1 = std::make_shared<const DensityModel>(DensityModel::shifted_hat(offset));
  offset[0] = 0.25;
  auto h_minus =
      std::make_shared<const DensityModel>(DensityModel::shifted_hat(offset));
  return MixtureProblem(std::move(h1), std::move(h_minus), s, s_tilde);
}

double example1_lipschitz(double s, double s_tilde) {
  const double c = (1.0 - s) * (1.0 - s_tilde);
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  return 32.0 * s / c;
}

}  // namespace synad
