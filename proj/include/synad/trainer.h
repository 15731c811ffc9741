#ifndef SYNAD_TRAINER_H_
#define SYNAD_TRAINER_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "synad/errors.h"
#include "synad/losses.h"
#include "synad/mlp.h"
#include "synad/risk.h"

namespace synad {

enum class Optimizer { kMomentum, kAdam };

std::string to_string(Optimizer optimizer);
Optimizer parse_optimizer(const std::string& text);

struct TrainConfig {
  // Architecture.
  std::vector<int> hidden_widths = {64, 64, 64};
  ActivationSpec activation = ActivationSpec::leaky_relu(0.01);
  OutputMapping mapping = OutputMapping::kSigmoidProbability;
  ActivationSpec output_sign = ActivationSpec::approx_sign(1, 0.1);

  // Objective. Without explicit class weights, s = 1/2 and
  // s~ = n-/(n- + n') from the training counts.
  Loss loss = Loss::kLogistic;
  Weighting weighting = Weighting::kClassWeighted;
  std::optional<ClassWeights> class_weights;

  // Optimization.
  Optimizer optimizer = Optimizer::kMomentum;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double weight_decay = 1e-4;
  int batch_size = 128;
  int max_epochs = 500;
  int patience = 10;
  std::uint64_t seed = 0;

  // Throws ConfigurationError on an invalid combination.
  void validate() const;
  ClassWeights resolve_weights(const TrainingSets& train) const;
};

struct EpochRecord {
  int epoch = 0;
  double train_risk = 0.0;
  double val_risk = 0.0;
};

void write_history_csv(std::ostream& out, const std::vector<EpochRecord>& history);

class TrainingFailure : public Error {
 public:
  TrainingFailure(const std::string& message, std::vector<EpochRecord> history)
      : Error(message), history_(std::move(history)) {}
  const std::vector<EpochRecord>& history() const { return history_; }
  const char* kind() const noexcept override { return "training_failure"; }

 private:
  std::vector<EpochRecord> history_;
};

struct TrainResult {
  MLPClassifier model;
  std::vector<EpochRecord> history;
  ClassWeights weights;
  int best_epoch = 0;
  double best_val_risk = 0.0;
  bool stopped_early = false;
};

// Mini-batch ERM on the weighted risk with L2 weight decay on the weight
// matrices. Each epoch visits a fresh permutation of the pooled training rows;
// a batch B contributes the unbiased estimate (N/|B|) sum_B w_i grad phi_i.
// Returns the parameters with the lowest validation risk; training stops
// once the validation risk has not improved for `patience` epochs. With an
// empty validation set the training risk drives model selection.
//
// Validation terms with no rows are dropped by moving their weight onto the
// other anomaly term (s~ -> 1 without synthetic rows, s~ -> 0 without known
// anomalies).
TrainResult train(const TrainConfig& config, const TrainingSets& train_sets,
                  const TrainingSets& validation_sets);

// Same, starting from the given network instead of init_mlp(..., seed).
TrainResult train_from(const TrainConfig& config, MLPClassifier initial,
                       const TrainingSets& train_sets,
                       const TrainingSets& validation_sets);

}  // namespace synad

#endif  // SYNAD_TRAINER_H_
