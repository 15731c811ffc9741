#ifndef SYNAD_RISK_H_
#define SYNAD_RISK_H_

#include <span>

#include "synad/dataset.h"
#include "synad/losses.h"
#include "synad/mlp.h"

namespace synad {

// Normal rows T, known anomalies T-, synthetic anomalies T'.
struct TrainingSets {
  Matrix normal;
  Matrix known;
  Matrix synthetic;

  Eigen::Index total() const { return normal.rows() + known.rows() + synthetic.rows(); }
};

// Splits an encoded dataset by class tag.
TrainingSets to_training_sets(const Dataset& data);

// Class weights of the three-term risk
//   (s/n) sum phi(f(X_i)) + ((1-s) s~/n-) sum phi(-f(X-_i))
//     + ((1-s)(1-s~)/n') sum phi(-f(X'_i)).
struct ClassWeights {
  double s = 0.5;
  double s_tilde = 0.5;

  // s = 1/2 and s~ = n-/(n- + n'), so the anomaly class is a plain mean over
  // the pooled real and synthetic anomalies.
  static ClassWeights balanced_default(Eigen::Index n_known, Eigen::Index n_synthetic);
};

enum class Weighting {
  // Three-term weighted risk with ClassWeights.
  kClassWeighted,
  // Every row weighs 1/(n + n- + n'): plain binary classification on the
  // union.
  kUnweightedUnion,
};

// Pooled rows with labels (+1 normal, -1 anomaly) and per-row weights that
// sum to 1. Zero-weight terms are dropped even when empty; a nonzero-weight
// term with no rows throws ConfigurationError.
struct WeightedSample {
  Matrix x;
  Vector y;
  Vector w;
};

WeightedSample pool(const TrainingSets& sets, Weighting weighting,
                    const ClassWeights& weights);

// The three-term weighted mean computed from decision values.
double weighted_risk_from_scores(std::span<const double> normal,
                                 std::span<const double> known,
                                 std::span<const double> synthetic,
                                 const ClassWeights& weights, Loss loss);

double weighted_empirical_risk(const MLPClassifier& model, const TrainingSets& sets,
                               const ClassWeights& weights, Loss loss);

double pooled_risk(const MLPClassifier& model, const WeightedSample& sample,
                   Loss loss);

// sum_i scale * w_i * phi(y_i g(x_i)) over the selected rows and its exact
// gradient in MLPClassifier::parameters() order (hinge kink subgradient 0).
// Throws NumericError naming the layer where a non-finite value appears.
struct RiskGradient {
  double risk = 0.0;
  Vector gradient;
};

RiskGradient risk_gradient(const MLPClassifier& model, const Matrix& x,
                           const Vector& y, const Vector& w, Loss loss,
                           double scale = 1.0);

}  // namespace synad

#endif  // SYNAD_RISK_H_
