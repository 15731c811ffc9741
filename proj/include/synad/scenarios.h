#ifndef SYNAD_SCENARIOS_H_
#define SYNAD_SCENARIOS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "synad/dataset.h"
#include "synad/mixture.h"

namespace synad {

enum class Figure2Case {
  // h1 has a low-density region where h_minus is lower still, so without
  // synthetic anomalies (s~ = 1) the ratio h1/h2 = h1/h_minus calls that
  // region normal, while any s~ < 1 bounds h2 below and flags it.
  kFalseNegative,
  // Example-1 geometry: touching supports with zero margin.
  kZeroMargin,
};

Figure2Case parse_figure2_case(const std::string& text);

// For kFalseNegative, h1 is 1.5754... on [0, 0.6] and 0.1 on [0.62, 1] (the
// low-density region), h_minus is 1.633... on [0, 0.6] and 0.01 on [0.62, 1],
// both linear in between and normalized.
MixtureProblem scenario_figure2(Figure2Case which, double s, double s_tilde);

// Piecewise-linear density on [0, 1] through (nodes, values), rescaled to
// integrate to one.
DensityModel normalized_piecewise_linear(std::vector<double> nodes,
                                         std::vector<double> values);

// Two-dimensional labeled-vs-unseen anomaly benchmark in the unit square:
// a Gaussian-like normal cluster around (0.3, 0.3), a known-anomaly cluster
// around (0.75, 0.3), and a test-only anomaly type spread uniformly over
// the box [0.15, 0.45] x [0.7, 0.95], far from both training clusters.
struct UnseenAnomalyScenario {
  int n_normal = 600;
  int n_known = 60;
  int n_test_normal = 600;
  int n_test_known = 100;
  int n_test_unknown = 100;
  double normal_sd = 0.06;
  double known_sd = 0.05;
};

struct ScenarioData {
  Dataset train;  // normal + known anomalies
  Dataset test;   // normal + known ("known") + unseen ("unknown") anomalies
};

ScenarioData make_unseen_anomaly_data(const UnseenAnomalyScenario& scenario,
                                      std::uint64_t seed);

}  // namespace synad

#endif  // SYNAD_SCENARIOS_H_
