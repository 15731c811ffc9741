#include "synad/risk.h"

#include <cmath>

#include "synad/errors.h"

namespace synad {

TrainingSets to_training_sets(const Dataset& data) {
  return {data.rows_with(ClassTag::kNormal), data.rows_with(ClassTag::kKnownAnomaly),
          data.rows_with(ClassTag::kSyntheticAnomaly)};
}

ClassWeights ClassWeights::balanced_default(Eigen::Index n_known,
                                            Eigen::Index n_synthetic) {
  ClassWeights w;
  w.s = 0.5;
  const Eigen::Index anomalies = n_known + n_synthetic;
  w.s_tilde = anomalies > 0 ? static_cast<double>(n_known) / static_cast<double>(anomalies)
                            : 0.0;
  return w;
}

namespace {

void check_weights(const ClassWeights& weights) {
  if (!(weights.s > 0.0 && weights.s < 1.0))
    throw ConfigurationError("class weight s must be in (0, 1)");
  if (!(weights.s_tilde >= 0.0 && weights.s_tilde <= 1.0))
    throw ConfigurationError("class weight s_tilde must be in [0, 1]");
}

struct TermWeights {
  double normal, known, synthetic;
};

TermWeights term_weights(const ClassWeights& w) {
  return {w.s, (1.0 - w.s) * w.s_tilde, (1.0 - w.s) * (1.0 - w.s_tilde)};
}

void require_rows(double weight, Eigen::Index rows, const char* name) {
  if (weight != 0.0 && rows == 0)
    throw ConfigurationError(std::string("risk term '") + name +
                             "' has nonzero weight but no samples");
}

}  // namespace

WeightedSample pool(const TrainingSets& sets, Weighting weighting,
                    const ClassWeights& weights) {
  const Eigen::Index total = sets.total();
  double wn, wk, ws;
  if (weighting == Weighting::kUnweightedUnion) {
    if (total == 0) throw ConfigurationError("no training rows");
    wn = wk = ws = 1.0 / static_cast<double>(total);
  } else {
    check_weights(weights);
    const TermWeights t = term_weights(weights);
    require_rows(t.normal, sets.normal.rows(), "normal");
    require_rows(t.known, sets.known.rows(), "known anomaly");
    require_rows(t.synthetic, sets.synthetic.rows(), "synthetic anomaly");
    wn = t.normal == 0.0 ? 0.0 : t.normal / static_cast<double>(sets.normal.rows());
    wk = t.known == 0.0 ? 0.0 : t.known / static_cast<double>(sets.known.rows());
    ws = t.synthetic == 0.0 ? 0.0
                            : t.synthetic / static_cast<double>(sets.synthetic.rows());
  }
  Eigen::Index rows = 0;
  Eigen::Index d = 0;
  for (auto [m, weight] : {std::pair{&sets.normal, wn}, std::pair{&sets.known, wk},
                           std::pair{&sets.synthetic, ws}}) {
    if (weight != 0.0) {
      rows += m->rows();
      if (m->rows() > 0) d = m->cols();
    }
  }
  WeightedSample out;
  out.x.resize(rows, d);
  out.y.resize(rows);
  out.w.resize(rows);
  Eigen::Index r = 0;
  auto append = [&](const Matrix& m, double label, double weight) {
    if (weight == 0.0) return;
    if (m.rows() > 0 && m.cols() != d)
      throw ShapeError("training sets disagree on feature dimension");
    for (Eigen::Index i = 0; i < m.rows(); ++i, ++r) {
      out.x.row(r) = m.row(i);
      out.y[r] = label;
      out.w[r] = weight;
    }
  };
  append(sets.normal, 1.0, wn);
  append(sets.known, -1.0, wk);
  append(sets.synthetic, -1.0, ws);
  return out;
}

double weighted_risk_from_scores(std::span<const double> normal,
                                 std::span<const double> known,
                                 std::span<const double> synthetic,
                                 const ClassWeights& weights, Loss loss) {
  check_weights(weights);
  const TermWeights t = term_weights(weights);
  require_rows(t.normal, static_cast<Eigen::Index>(normal.size()), "normal");
  require_rows(t.known, static_cast<Eigen::Index>(known.size()), "known anomaly");
  require_rows(t.synthetic, static_cast<Eigen::Index>(synthetic.size()),
               "synthetic anomaly");
  auto term = [loss](std::span<const double> scores, double sign, double weight) {
    if (weight == 0.0) return 0.0;
    double sum = 0.0;
    for (double f : scores) sum += loss_value(loss, sign * f);
    return weight * sum / static_cast<double>(scores.size());
  };
  return term(normal, 1.0, t.normal) + term(known, -1.0, t.known) +
         term(synthetic, -1.0, t.synthetic);
}

double weighted_empirical_risk(const MLPClassifier& model, const TrainingSets& sets,
                               const ClassWeights& weights, Loss loss) {
  auto decide = [&model](const Matrix& m) {
    return m.rows() > 0 ? model.decision(m) : Vector();
  };
  const Vector fn = decide(sets.normal);
  const Vector fk = decide(sets.known);
  const Vector fs = decide(sets.synthetic);
  return weighted_risk_from_scores({fn.data(), static_cast<std::size_t>(fn.size())},
                                   {fk.data(), static_cast<std::size_t>(fk.size())},
                                   {fs.data(), static_cast<std::size_t>(fs.size())},
                                   weights, loss);
}

double pooled_risk(const MLPClassifier& model, const WeightedSample& sample,
                   Loss loss) {
  if (sample.x.rows() == 0) return 0.0;
  const Vector g = model.decision(sample.x);
  double risk = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    risk += sample.w[i] * loss_value(loss, sample.y[i] * g[i]);
  return risk;
}

RiskGradient risk_gradient(const MLPClassifier& model, const Matrix& x,
                           const Vector& y, const Vector& w, Loss loss,
                           double scale) {
  if (x.rows() == 0) throw InvalidParameterError("gradient needs a non-empty batch");
  if (x.cols() != model.input_dim()) throw ShapeError("batch has the wrong width");
  const auto& layers = model.layers();
  const auto& act = model.hidden_activation();
  const std::size_t hidden = layers.size() - 1;

  // Forward pass, keeping pre-activations.
  std::vector<Matrix> pre(hidden);
  std::vector<Matrix> post(hidden + 1);
  post[0] = x;
  for (std::size_t l = 0; l < hidden; ++l) {
    pre[l] = post[l] * layers[l].weights.transpose();
    pre[l].rowwise() += layers[l].bias.transpose();
    post[l + 1] = pre[l].unaryExpr([&act](double v) { return act.apply(v); });
    if (!post[l + 1].allFinite())
      throw NumericError("non-finite hidden activation", static_cast<int>(l + 1));
  }
  const auto& out = layers.back();
  Vector f = post[hidden] * out.weights.row(0).transpose();
  f.array() += out.bias[0];
  if (!f.allFinite())
    throw NumericError("non-finite network output", static_cast<int>(hidden + 1));

  const bool mapped = model.output_mapping() == OutputMapping::kTanhLike;
  const auto& sign_map = model.output_sign();
  RiskGradient result;
  Vector delta(f.size());  // dR/df
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double g = mapped ? sign_map.apply(f[i]) : f[i];
    const double margin = y[i] * g;
    result.risk += scale * w[i] * loss_value(loss, margin);
    double d = scale * w[i] * y[i] * loss_derivative(loss, margin);
    if (mapped) d *= sign_map.derivative(f[i]);
    delta[i] = d;
  }

  // Backward pass; gradients per layer in parameters() order.
  std::vector<Eigen::MatrixXd> grad_w(layers.size());
  std::vector<Eigen::VectorXd> grad_b(layers.size());
  grad_w[hidden] = (delta.transpose() * post[hidden]);
  grad_b[hidden] = Eigen::VectorXd::Constant(1, delta.sum());
  Matrix back = delta * out.weights;  // n x p_L
  for (std::size_t l = hidden; l-- > 0;) {
    Matrix dz = back.cwiseProduct(
        pre[l].unaryExpr([&act](double v) { return act.derivative(v); }));
    grad_w[l] = dz.transpose() * post[l];
    grad_b[l] = dz.colwise().sum().transpose();
    if (!grad_w[l].allFinite())
      throw NumericError("non-finite gradient", static_cast<int>(l + 1));
    if (l > 0) back = dz * layers[l].weights;
  }

  result.gradient.resize(model.parameter_count());
  Eigen::Index k = 0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (Eigen::Index r = 0; r < grad_w[l].rows(); ++r)
      for (Eigen::Index c = 0; c < grad_w[l].cols(); ++c)
        result.gradient[k++] = grad_w[l](r, c);
    for (Eigen::Index r = 0; r < grad_b[l].size(); ++r)
      result.gradient[k++] = grad_b[l][r];
  }
  return result;
}

}  // namespace synad
