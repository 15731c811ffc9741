#include "synad/aupr.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synad/errors.h"

namespace synad {

namespace {

struct Counts {
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

Counts check_inputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw ShapeError("scores and labels differ in length");
  Counts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      ++c.positives;
    } else if (labels[i] == 0) {
      ++c.negatives;
    } else {
      throw InvalidParameterError("labels must be 0 (normal) or 1 (anomaly)");
    }
    if (std::isnan(scores[i])) throw InvalidParameterError("score is NaN");
  }
  if (c.positives == 0 || c.negatives == 0)
    throw UndefinedMetricError("metric needs both anomalies and normal rows");
  return c;
}

std::vector<std::size_t> descending_order(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

std::vector<PrPoint> pr_curve(std::span<const double> scores,
                              std::span<const int> labels) {
  const Counts counts = check_inputs(scores, labels);
  const auto order = descending_order(scores);
  std::vector<PrPoint> curve;
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == threshold; ++i)
      (labels[order[i]] == 1 ? tp : fp) += 1;
    curve.push_back({threshold,
                     static_cast<double>(tp) / static_cast<double>(tp + fp),
                     static_cast<double>(tp) / static_cast<double>(counts.positives)});
  }
  return curve;
}

double aupr(std::span<const double> scores, std::span<const int> labels) {
  double ap = 0.0;
  double previous_recall = 0.0;
  for (const PrPoint& p : pr_curve(scores, labels)) {
    ap += (p.recall - previous_recall) * p.precision;
    previous_recall = p.recall;
  }
  return ap;
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
  const Counts counts = check_inputs(scores, labels);
  const auto order = descending_order(scores);
  // Count (anomaly, normal) pairs ranked correctly, ties as 1/2.
  double correct = 0.0;
  std::size_t normals_above = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double threshold = scores[order[i]];
    std::size_t pos = 0, neg = 0;
    for (; i < order.size() && scores[order[i]] == threshold; ++i)
      (labels[order[i]] == 1 ? pos : neg) += 1;
    correct += static_cast<double>(pos) *
               (static_cast<double>(counts.negatives - normals_above - neg) +
                0.5 * static_cast<double>(neg));
    normals_above += neg;
  }
  return correct /
         (static_cast<double>(counts.positives) * static_cast<double>(counts.negatives));
}

std::vector<SubtypeResult> evaluate_subtypes(std::span<const double> scores,
                                             std::span<const int> labels,
                                             std::span<const std::string> subtypes) {
  if (scores.size() != labels.size() || scores.size() != subtypes.size())
    throw ShapeError("scores, labels and subtypes differ in length");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1 && std::find(names.begin(), names.end(), subtypes[i]) == names.end())
      names.push_back(subtypes[i]);
  std::vector<SubtypeResult> results;
  for (const auto& name : names) {
    std::vector<double> s;
    std::vector<int> l;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == 0 || subtypes[i] == name) {
        s.push_back(scores[i]);
        l.push_back(labels[i]);
      }
    }
    SubtypeResult r;
    r.subtype = name;
    r.anomalies = static_cast<std::size_t>(std::count(l.begin(), l.end(), 1));
    r.normals = l.size() - r.anomalies;
    r.aupr = aupr(s, l);
    r.auroc = auroc(s, l);
    r.baseline = static_cast<double>(r.anomalies) / static_cast<double>(l.size());
    results.push_back(r);
  }
  return results;
}

nlohmann::json EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : subtypes) {
    nlohmann::ordered_json row;
    row["subtype"] = r.subtype;
    row["aupr"] = r.aupr;
    row["random_baseline"] = r.baseline;
    row["auroc"] = r.auroc;
    row["normals"] = r.normals;
    row["anomalies"] = r.anomalies;
    rows.push_back(row);
  }
  j["subtypes"] = rows;
  return nlohmann::json(j);
}

}  // namespace synad
