#include "synad/scenarios.h"

#include <algorithm>
#include <cmath>
#include <memory>

#include "synad/errors.h"
#include "synad/rng.h"

namespace synad {

Figure2Case parse_figure2_case(const std::string& text) {
  if (text == "false_negative" || text == "false-negative") return Figure2Case::kFalseNegative;
  if (text == "zero_margin" || text == "zero-margin") return Figure2Case::kZeroMargin;
  throw InvalidParameterError("unknown scenario case '" + text + "'");
}

DensityModel normalized_piecewise_linear(std::vector<double> nodes,
                                         std::vector<double> values) {
  if (nodes.size() != values.size() || nodes.size() < 2)
    throw InvalidParameterError("piecewise-linear density needs matching nodes/values");
  double integral = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    integral += 0.5 * (values[i] + values[i - 1]) * (nodes[i] - nodes[i - 1]);
  if (!(integral > 0.0)) throw InvalidParameterError("density has zero mass");
  for (double& v : values) v /= integral;
  return DensityModel::tabulated({std::move(nodes)}, std::move(values));
}

MixtureProblem scenario_figure2(Figure2Case which, double s, double s_tilde) {
  if (which == Figure2Case::kZeroMargin) return example1_problem(s, s_tilde);
  // The high plateau absorbs the remaining mass, so the normalization in
  // normalized_piecewise_linear is a no-op up to rounding.
  const double low_h1 = 0.1;
  const double high_h1 = (1.0 - 0.01 * low_h1 - 0.38 * low_h1) / 0.61;
  const double low_hm = 0.01;
  const double high_hm = (1.0 - 0.01 * low_hm - 0.38 * low_hm) / 0.61;
  auto h1 = std::make_shared<const DensityModel>(normalized_piecewise_linear(
      {0.0, 0.6, 0.62, 1.0}, {high_h1, high_h1, low_h1, low_h1}));
  auto hm = std::make_shared<const DensityModel>(normalized_piecewise_linear(
      {0.0, 0.6, 0.62, 1.0}, {high_hm, high_hm, low_hm, low_hm}));
  return MixtureProblem(h1, hm, s, s_tilde);
}

namespace {

// Normal draw centered at `center` with scale sd, resampled until it lands
// in the unit square.
void clustered_point(Rng& rng, double cx, double cy, double sd, double* out) {
  do {
    out[0] = cx + sd * rng.normal();
    out[1] = cy + sd * rng.normal();
  } while (out[0] < 0.0 || out[0] >= 1.0 || out[1] < 0.0 || out[1] >= 1.0);
}

Matrix cluster(Rng& rng, int n, double cx, double cy, double sd) {
  Matrix m(n, 2);
  for (int i = 0; i < n; ++i) clustered_point(rng, cx, cy, sd, m.row(i).data());
  return m;
}

Matrix box(Rng& rng, int n) {
  Matrix m(n, 2);
  for (int i = 0; i < n; ++i) {
    m(i, 0) = rng.uniform(0.15, 0.45);
    m(i, 1) = rng.uniform(0.7, 0.95);
  }
  return m;
}

}  // namespace

ScenarioData make_unseen_anomaly_data(const UnseenAnomalyScenario& sc,
                                      std::uint64_t seed) {
  if (sc.n_normal < 1 || sc.n_known < 1 || sc.n_test_normal < 1 ||
      sc.n_test_known < 0 || sc.n_test_unknown < 1)
    throw InvalidParameterError("scenario sizes must be positive");
  Rng rng(seed, 0x5343454E);  // "SCEN"
  ScenarioData data;
  const Matrix empty(0, 2);
  data.train = make_numeric_dataset(cluster(rng, sc.n_normal, 0.3, 0.3, sc.normal_sd),
                                    cluster(rng, sc.n_known, 0.75, 0.3, sc.known_sd),
                                    empty);
  data.train.seed = seed;
  data.train.source = "unseen-anomaly-scenario/train";

  const Matrix test_normal = cluster(rng, sc.n_test_normal, 0.3, 0.3, sc.normal_sd);
  const Matrix test_known = cluster(rng, sc.n_test_known, 0.75, 0.3, sc.known_sd);
  const Matrix test_unknown = box(rng, sc.n_test_unknown);
  Matrix anomalies(test_known.rows() + test_unknown.rows(), 2);
  anomalies << test_known, test_unknown;
  data.test = make_numeric_dataset(test_normal, anomalies, empty);
  for (Eigen::Index i = 0; i < data.test.rows(); ++i) {
    auto& subtype = data.test.subtypes[static_cast<std::size_t>(i)];
    if (i < test_normal.rows()) {
      subtype = "normal";
    } else {
      subtype = i < test_normal.rows() + test_known.rows() ? "known" : "unknown";
    }
  }
  data.test.seed = seed;
  data.test.source = "unseen-anomaly-scenario/test";
  return data;
}

}  // namespace synad
