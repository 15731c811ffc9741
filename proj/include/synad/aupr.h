#ifndef SYNAD_AUPR_H_
#define SYNAD_AUPR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace synad {

// Labels are 1 for anomaly (the positive class) and 0 for normal; higher
// scores mean more anomalous.

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// One point per distinct score, in descending score order; tied scores
// enter together.
std::vector<PrPoint> pr_curve(std::span<const double> scores,
                              std::span<const int> labels);

// Average precision sum_i (R_i - R_{i-1}) P_i over pr_curve(). Constant
// scores give exactly the anomaly prevalence. Throws UndefinedMetricError
// unless both classes are present.
double aupr(std::span<const double> scores, std::span<const int> labels);

// Area under the ROC curve, ties counted one half.
double auroc(std::span<const double> scores, std::span<const int> labels);

struct SubtypeResult {
  std::string subtype;
  double aupr = 0.0;
  double baseline = 0.0;  // anomaly prevalence = AUPR of a random scorer
  double auroc = 0.0;
  std::size_t normals = 0;
  std::size_t anomalies = 0;
};

struct EvaluationReport {
  std::vector<SubtypeResult> subtypes;
  std::string config_hash;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

// For each anomaly subtype (in order of first appearance), scores all normal
// rows together with that subtype's anomalies. Subtypes of normal rows are
// ignored.
std::vector<SubtypeResult> evaluate_subtypes(std::span<const double> scores,
                                             std::span<const int> labels,
                                             std::span<const std::string> subtypes);

}  // namespace synad

#endif  // SYNAD_AUPR_H_
