#include "synad/trainer.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "synad/csv.h"
#include "synad/rng.h"

namespace synad {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646;  // "SHUFF"
constexpr double kDivergenceLimit = 1e6;

// Mask selecting weight-matrix entries (not biases) for weight decay.
Vector decay_mask(const MLPClassifier& model) {
  Vector mask(model.parameter_count());
  Eigen::Index k = 0;
  for (const auto& layer : model.layers()) {
    for (Eigen::Index i = 0; i < layer.weights.size(); ++i) mask[k++] = 1.0;
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) mask[k++] = 0.0;
  }
  return mask;
}

ClassWeights validation_weights(const ClassWeights& w, const TrainingSets& val) {
  ClassWeights out = w;
  if (val.synthetic.rows() == 0 && val.known.rows() > 0) out.s_tilde = 1.0;
  if (val.known.rows() == 0 && val.synthetic.rows() > 0) out.s_tilde = 0.0;
  return out;
}

}  // namespace

std::string to_string(Optimizer optimizer) {
  return optimizer == Optimizer::kAdam ? "adam" : "momentum";
}

Optimizer parse_optimizer(const std::string& text) {
  if (text == "momentum" || text == "sgd") return Optimizer::kMomentum;
  if (text == "adam") return Optimizer::kAdam;
  throw ConfigurationError("unknown optimizer '" + text + "'");
}

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate))
    throw ConfigurationError("learning rate must be finite and non-negative");
  if (!(momentum >= 0.0 && momentum < 1.0))
    throw ConfigurationError("momentum must be in [0, 1)");
  if (!(weight_decay >= 0.0)) throw ConfigurationError("weight decay must be >= 0");
  if (batch_size < 1) throw ConfigurationError("batch size must be >= 1");
  if (max_epochs < 0) throw ConfigurationError("max epochs must be >= 0");
  if (patience < 1) throw ConfigurationError("patience must be >= 1");
  if (hidden_widths.empty()) throw ConfigurationError("need at least one hidden layer");
  for (int w : hidden_widths)
    if (w < 1) throw ConfigurationError("hidden widths must be positive");
  if (class_weights) {
    if (!(class_weights->s > 0.0 && class_weights->s < 1.0))
      throw ConfigurationError("class weight s must be in (0, 1)");
    if (!(class_weights->s_tilde >= 0.0 && class_weights->s_tilde <= 1.0))
      throw ConfigurationError("class weight s_tilde must be in [0, 1]");
  }
}

ClassWeights TrainConfig::resolve_weights(const TrainingSets& train) const {
  if (class_weights) return *class_weights;
  return ClassWeights::balanced_default(train.known.rows(), train.synthetic.rows());
}

void write_history_csv(std::ostream& out, const std::vector<EpochRecord>& history) {
  CsvWriter writer(out);
  writer.row({"epoch", "train_risk", "val_risk"});
  for (const auto& r : history)
    writer.row({std::to_string(r.epoch), format_double(r.train_risk),
                format_double(r.val_risk)});
}

TrainResult train(const TrainConfig& config, const TrainingSets& train_sets,
                  const TrainingSets& validation_sets) {
  config.validate();
  Eigen::Index d = 0;
  for (const Matrix* m : {&train_sets.normal, &train_sets.known, &train_sets.synthetic})
    if (m->rows() > 0) d = m->cols();
  if (d == 0) throw ConfigurationError("training sets are empty");
  std::vector<int> dims = {static_cast<int>(d)};
  dims.insert(dims.end(), config.hidden_widths.begin(), config.hidden_widths.end());
  dims.push_back(1);
  return train_from(config,
                    init_mlp(dims, config.activation, config.mapping, config.seed,
                             config.output_sign),
                    train_sets, validation_sets);
}

TrainResult train_from(const TrainConfig& config, MLPClassifier initial,
                       const TrainingSets& train_sets,
                       const TrainingSets& validation_sets) {
  config.validate();
  const ClassWeights weights = config.resolve_weights(train_sets);
  const WeightedSample sample = pool(train_sets, config.weighting, weights);
  if (sample.x.rows() == 0) throw ConfigurationError("no weighted training rows");
  const bool has_validation = validation_sets.total() > 0;
  WeightedSample val;
  if (has_validation)
    val = pool(validation_sets, config.weighting,
               validation_weights(weights, validation_sets));

  MLPClassifier model = std::move(initial);
  const Eigen::Index n = sample.x.rows();
  const Eigen::Index p = model.parameter_count();
  const Vector mask = decay_mask(model);
  Vector theta = model.parameters();
  Vector velocity = Vector::Zero(p);
  Vector second = Vector::Zero(p);
  constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kAdamEps = 1e-8;
  long step = 0;

  Rng rng(config.seed, kShuffleStream);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  TrainResult result{model, {}, weights, 0, 0.0, false};
  auto val_risk_of = [&](const MLPClassifier& m, double train_risk) {
    return has_validation ? pooled_risk(m, val, config.loss) : train_risk;
  };
  const double initial_train = pooled_risk(model, sample, config.loss);
  double best = val_risk_of(model, initial_train);
  if (!std::isfinite(best)) best = std::numeric_limits<double>::infinity();
  result.best_val_risk = best;
  int since_best = 0;

  const Eigen::Index batch = std::min<Eigen::Index>(config.batch_size, n);
  Matrix xb;
  Vector yb, wb;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(std::span<Eigen::Index>(order));
    for (Eigen::Index start = 0; start < n; start += batch) {
      const Eigen::Index size = std::min(batch, n - start);
      xb.resize(size, sample.x.cols());
      yb.resize(size);
      wb.resize(size);
      for (Eigen::Index i = 0; i < size; ++i) {
        const Eigen::Index r = order[static_cast<std::size_t>(start + i)];
        xb.row(i) = sample.x.row(r);
        yb[i] = sample.y[r];
        wb[i] = sample.w[r];
      }
      RiskGradient g;
      try {
        g = risk_gradient(model, xb, yb, wb, config.loss,
                          static_cast<double>(n) / static_cast<double>(size));
      } catch (const NumericError& e) {
        throw TrainingFailure(std::string("training diverged: ") + e.what(),
                              result.history);
      }
      Vector grad = g.gradient + config.weight_decay * mask.cwiseProduct(theta);
      if (config.optimizer == Optimizer::kMomentum) {
        velocity = config.momentum * velocity - config.learning_rate * grad;
        theta += velocity;
      } else {
        ++step;
        velocity = kBeta1 * velocity + (1.0 - kBeta1) * grad;
        second = kBeta2 * second + (1.0 - kBeta2) * grad.cwiseAbs2();
        const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step));
        const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step));
        theta.array() -= config.learning_rate * (velocity.array() / c1) /
                         ((second.array() / c2).sqrt() + kAdamEps);
      }
      model.set_parameters(theta);
    }

    EpochRecord record;
    record.epoch = epoch;
    try {
      record.train_risk = pooled_risk(model, sample, config.loss);
    } catch (const NumericError&) {
      record.train_risk = std::numeric_limits<double>::quiet_NaN();
    }
    if (!std::isfinite(record.train_risk) || record.train_risk > kDivergenceLimit ||
        !theta.allFinite()) {
      record.val_risk = std::numeric_limits<double>::quiet_NaN();
      result.history.push_back(record);
      throw TrainingFailure("training diverged at epoch " + std::to_string(epoch),
                            result.history);
    }
    record.val_risk = val_risk_of(model, record.train_risk);
    result.history.push_back(record);

    if (record.val_risk < best) {
      best = record.val_risk;
      result.best_epoch = epoch;
      result.best_val_risk = best;
      result.model = model;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      result.stopped_early = epoch < config.max_epochs;
      break;
    }
  }
  return result;
}

}  // namespace synad
