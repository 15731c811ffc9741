#include "synad/mlp.h"

#include <algorithm>
#include <cmath>

#include "synad/errors.h"
#include "synad/rng.h"

namespace synad {

std::string to_string(OutputMapping mapping) {
  switch (mapping) {
    case OutputMapping::kSigmoidProbability:
      return "sigmoid_probability";
    case OutputMapping::kTanhLike:
      return "tanh_like";
    case OutputMapping::kRaw:
      return "raw";
  }
  return "?";
}

OutputMapping parse_output_mapping(const std::string& text) {
  if (text == "sigmoid_probability" || text == "sigmoid")
    return OutputMapping::kSigmoidProbability;
  if (text == "tanh_like") return OutputMapping::kTanhLike;
  if (text == "raw") return OutputMapping::kRaw;
  throw InvalidParameterError("unknown output mapping '" + text + "'");
}

MLPClassifier::MLPClassifier(std::vector<int> dims, ActivationSpec hidden,
                             OutputMapping mapping, ActivationSpec output_sign)
    : dims_(std::move(dims)),
      hidden_(hidden),
      mapping_(mapping),
      output_sign_(output_sign) {
  if (dims_.size() < 3)
    throw InvalidParameterError("network needs at least one hidden layer");
  if (dims_.back() != 1)
    throw InvalidParameterError("network output width must be 1");
  for (int w : dims_)
    if (w < 1) throw InvalidParameterError("layer widths must be positive");
  hidden_.validate();
  output_sign_.validate();
  if (output_sign_.kind != ActivationSpec::Kind::kApproxSign)
    throw InvalidParameterError("output sign map must be an approx-sign");
  for (std::size_t l = 1; l < dims_.size(); ++l)
    layers_.push_back({Eigen::MatrixXd::Zero(dims_[l], dims_[l - 1]),
                       Eigen::VectorXd::Zero(dims_[l])});
}

Eigen::Index MLPClassifier::parameter_count() const {
  Eigen::Index count = 0;
  for (const auto& layer : layers_) count += layer.weights.size() + layer.bias.size();
  return count;
}

Vector MLPClassifier::parameters() const {
  Vector flat(parameter_count());
  Eigen::Index k = 0;
  for (const auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
        flat[k++] = layer.weights(r, c);
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) flat[k++] = layer.bias[r];
  }
  return flat;
}

void MLPClassifier::set_parameters(const Vector& flat) {
  if (flat.size() != parameter_count())
    throw ShapeError("parameter vector has the wrong length");
  Eigen::Index k = 0;
  for (auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
        layer.weights(r, c) = flat[k++];
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = flat[k++];
  }
}

Vector MLPClassifier::raw(const Matrix& x) const {
  if (x.cols() != input_dim())
    throw ShapeError("input has " + std::to_string(x.cols()) +
                     " features, network expects " + std::to_string(input_dim()));
  Matrix a = x;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) {
    Matrix z = a * layers_[l].weights.transpose();
    z.rowwise() += layers_[l].bias.transpose();
    a = z.unaryExpr([this](double v) { return hidden_.apply(v); });
  }
  const auto& out = layers_.back();
  Vector f = a * out.weights.row(0).transpose();
  f.array() += out.bias[0];
  return f;
}

double MLPClassifier::raw(std::span<const double> x) const {
  Matrix row(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) row(0, static_cast<Eigen::Index>(j)) = x[j];
  return raw(row)[0];
}

Vector MLPClassifier::decision(const Matrix& x) const {
  Vector f = raw(x);
  if (mapping_ == OutputMapping::kTanhLike)
    f = f.unaryExpr([this](double v) { return output_sign_.apply(v); });
  return f;
}

namespace {
double sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}
}  // namespace

Vector MLPClassifier::score(const Matrix& x) const {
  Vector f = raw(x);
  switch (mapping_) {
    case OutputMapping::kSigmoidProbability:
      return f.unaryExpr([](double v) { return sigmoid(-v); });
    case OutputMapping::kTanhLike:
      return f.unaryExpr([this](double v) { return output_sign_.apply(v); });
    case OutputMapping::kRaw:
      return f;
  }
  return f;
}

double MLPClassifier::score(std::span<const double> x) const {
  Matrix row(1, static_cast<Eigen::Index>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) row(0, static_cast<Eigen::Index>(j)) = x[j];
  return score(row)[0];
}

Vector MLPClassifier::anomaly_score(const Matrix& x) const {
  Vector f = raw(x);
  if (mapping_ == OutputMapping::kTanhLike)
    return f.unaryExpr(
        [this](double v) { return 0.5 * (1.0 - output_sign_.apply(v)); });
  return f.unaryExpr([](double v) { return sigmoid(-v); });
}

Vector MLPClassifier::regression_estimate(const Matrix& x) const {
  Vector f = raw(x);
  switch (mapping_) {
    case OutputMapping::kSigmoidProbability:
      return f.unaryExpr([](double v) { return std::tanh(0.5 * v); });
    case OutputMapping::kTanhLike:
      return f.unaryExpr([this](double v) { return output_sign_.apply(v); });
    case OutputMapping::kRaw:
      return f;
  }
  return f;
}

bool MLPClassifier::all_finite() const {
  for (const auto& layer : layers_)
    if (!layer.weights.allFinite() || !layer.bias.allFinite()) return false;
  return true;
}

MLPClassifier init_mlp(const std::vector<int>& dims, const ActivationSpec& hidden,
                       OutputMapping mapping, std::uint64_t seed,
                       ActivationSpec output_sign) {
  MLPClassifier model(dims, hidden, mapping, output_sign);
  Rng rng(seed, 0x494E4954ULL);
  auto& layers = model.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const double fan_in = static_cast<double>(layers[l].weights.cols());
    const double gain = l + 1 < layers.size() ? 2.0 : 1.0;
    const double stddev = std::sqrt(gain / fan_in);
    for (Eigen::Index r = 0; r < layers[l].weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layers[l].weights.cols(); ++c)
        layers[l].weights(r, c) = stddev * rng.normal();
  }
  return model;
}

int default_width(int dimension, std::int64_t samples) {
  const double w = 1.19 * dimension *
                   std::pow(static_cast<double>(std::max<std::int64_t>(samples, 1)), 0.19);
  return std::clamp(static_cast<int>(std::lround(w)), 16, 6000);
}

}  // namespace synad
