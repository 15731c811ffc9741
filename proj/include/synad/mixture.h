#ifndef SYNAD_MIXTURE_H_
#define SYNAD_MIXTURE_H_

#include <memory>
#include <span>

#include "synad/density.h"

namespace synad {

// Ground-truth scenario: normal density h1, known-anomaly density h_minus,
// normal-class proportion s, and known-anomaly share s_tilde of the anomaly
// class. The effective anomaly density is
//
//   h2(x) = s_tilde * h_minus(x) + (1 - s_tilde),
//
// i.e. known anomalies mixed with uniform synthetic ones. For s_tilde < 1,
// h2 >= 1 - s_tilde > 0 everywhere. s_tilde = 0 gives h2 = 1 (pure density
// level set); s_tilde = 1 gives h2 = h_minus (no synthetic anomalies).
class MixtureProblem {
 public:
  MixtureProblem(std::shared_ptr<const DensityModel> h1,
                 std::shared_ptr<const DensityModel> h_minus, double s,
                 double s_tilde);

  const DensityModel& h1() const { return *h1_; }
  const DensityModel& h_minus() const { return *h_minus_; }
  std::shared_ptr<const DensityModel> h1_ptr() const { return h1_; }
  std::shared_ptr<const DensityModel> h_minus_ptr() const { return h_minus_; }
  double s() const { return s_; }
  double s_tilde() const { return s_tilde_; }
  int dimension() const { return h1_->dimension(); }

  double h2(std::span<const double> x) const;
  // Likelihood-ratio threshold matching the Bayes rule, (1 - s)/s.
  double default_rho() const { return (1.0 - s_) / s_; }

  // Same densities, different mixing weights.
  MixtureProblem with_weights(double s, double s_tilde) const;

 private:
  std::shared_ptr<const DensityModel> h1_;
  std::shared_ptr<const DensityModel> h_minus_;
  double s_;
  double s_tilde_;
};

struct LevelSetSpec {
  double rho = 1.0;

  explicit LevelSetSpec(double rho);
  static LevelSetSpec for_problem(const MixtureProblem& problem) {
    return LevelSetSpec(problem.default_rho());
  }
};

// Tsybakov noise condition P_X(|f_P| <= t) <= c0 t^q.
struct NoiseCondition {
  double q = 0.0;
  double c0 = 1.0;

  NoiseCondition(double q, double c0);
  // q = 0, c0 = 1 holds for every distribution.
  static NoiseCondition trivial() { return NoiseCondition(0.0, 1.0); }
};

// Pointwise forms on density values (h1, h2 >= 0).
double regression_from_densities(double h1, double h2, double s);
double class_prob_from_densities(double h1, double h2, double s);
int bayes_from_densities(double h1, double h2, double s);
bool level_set_from_densities(double h1, double h2, double rho);

// f_P(x) = (s h1 - (1-s) h2) / (s h1 + (1-s) h2).
// Throws UndefinedPointError where h1 = h2 = 0 (only possible for s_tilde = 1).
double regression_function(const MixtureProblem& problem,
                           std::span<const double> x);
// eta(x) = s h1 / (s h1 + (1-s) h2); f_P = 2 eta - 1.
double conditional_class_prob(const MixtureProblem& problem,
                              std::span<const double> x);
// +1 iff s h1(x) - (1-s) h2(x) >= 0.
int bayes_classifier(const MixtureProblem& problem, std::span<const double> x);
// h1/h2 >= rho, with h2 = 0 < h1 counted as inside.
bool level_set_indicator(const MixtureProblem& problem, const LevelSetSpec& spec,
                         std::span<const double> x);

// Two touching hats: h1 = 4H(4x - 3), h_minus = 4H(4x - 1), H = max{1-|x|,0}.
MixtureProblem example1_problem(double s, double s_tilde);
// Product hats shifted by -+(1/4, 0, ..., 0) in the unit cube (the image of
// the +-(1/2, 0, ..., 0) offsets of the raw construction).
MixtureProblem example2_problem(int dimension, double s, double s_tilde);

// Lipschitz constant of f_P on (1/2, 3/4) for example1_problem:
// 32 s / ((1 - s)(1 - s_tilde)). Infinite for s_tilde = 1.
double example1_lipschitz(double s, double s_tilde);

}  // namespace synad

#endif  // SYNAD_MIXTURE_H_
