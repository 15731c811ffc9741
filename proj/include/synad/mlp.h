#ifndef SYNAD_MLP_H_
#define SYNAD_MLP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synad/activations.h"
#include "synad/types.h"

namespace synad {

// How the raw network output f(x) (positive = normal) is presented.
enum class OutputMapping {
  // Anomaly probability sigmoid(-f) in [0, 1]; trained with the loss on f.
  kSigmoidProbability,
  // sigma^k_tau(f) in [-1, 1]; the loss sees the mapped value (hypothesis
  // space of approx-sign-composed networks).
  kTanhLike,
  kRaw,
};

std::string to_string(OutputMapping mapping);
OutputMapping parse_output_mapping(const std::string& text);

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
};

// Fully connected network
//   f(x) = a . act(W_L ... act(W_1 x + b_1) ... + b_L) + b_out
// with widths dims = (d, p_1, ..., p_L, 1).
class MLPClassifier {
 public:
  MLPClassifier(std::vector<int> dims, ActivationSpec hidden,
                OutputMapping mapping,
                ActivationSpec output_sign = ActivationSpec::approx_sign(1, 0.1));

  const std::vector<int>& dims() const { return dims_; }
  int input_dim() const { return dims_.front(); }
  int hidden_layers() const { return static_cast<int>(dims_.size()) - 2; }
  const ActivationSpec& hidden_activation() const { return hidden_; }
  const ActivationSpec& output_sign() const { return output_sign_; }
  OutputMapping output_mapping() const { return mapping_; }

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }

  // Flattened as, per layer, the weights row by row then the bias.
  Eigen::Index parameter_count() const;
  Vector parameters() const;
  void set_parameters(const Vector& flat);

  // Raw output f for each row of x (n x d). Throws ShapeError on a
  // dimension mismatch.
  Vector raw(const Matrix& x) const;
  double raw(std::span<const double> x) const;
  // Value the loss is applied to: sigma^k_tau(f) for kTanhLike, f otherwise.
  Vector decision(const Matrix& x) const;
  // Output in the mapping's range.
  Vector score(const Matrix& x) const;
  double score(std::span<const double> x) const;
  // Higher = more anomalous, in [0, 1].
  Vector anomaly_score(const Matrix& x) const;
  // Estimate of the regression function E[Y|x] in [-1, 1]: tanh(f/2) for
  // the sigmoid mapping (the logistic-loss minimizer), sigma^k_tau(f) for
  // kTanhLike, f for kRaw.
  Vector regression_estimate(const Matrix& x) const;

  bool all_finite() const;

 private:
  std::vector<int> dims_;
  ActivationSpec hidden_;
  OutputMapping mapping_;
  ActivationSpec output_sign_;
  std::vector<DenseLayer> layers_;
};

// Weights drawn N(0, 2/fan_in) (N(0, 1/fan_in) for the output layer), biases
// zero, deterministic per seed. Throws InvalidParameterError without hidden
// layers or with non-positive widths.
MLPClassifier init_mlp(const std::vector<int>& dims, const ActivationSpec& hidden,
                       OutputMapping mapping, std::uint64_t seed,
                       ActivationSpec output_sign = ActivationSpec::approx_sign(1, 0.1));

// Default hidden width for d input features and M training rows:
// round(1.19 d M^0.19) clamped to [16, 6000], a log-linear fit to the widths
// used for NSL-KDD, Thyroid, Arrhythmia, MVTec and AdvBench.
int default_width(int dimension, std::int64_t samples);

}  // namespace synad

#endif  // SYNAD_MLP_H_
