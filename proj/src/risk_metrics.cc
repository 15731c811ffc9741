#include "synad/risk_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "synad/activations.h"
#include "synad/errors.h"

namespace synad {

BatchScorer pointwise_scorer(std::function<double(std::span<const double>)> f) {
  return [f = std::move(f)](const Matrix& x) {
    Vector out(x.rows());
    std::vector<double> row(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      for (Eigen::Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(i, j);
      out[i] = f(row);
    }
    return out;
  };
}

BatchScorer raw_scorer(const MLPClassifier& model) {
  return [model](const Matrix& x) { return model.raw(x); };
}

BatchScorer regression_scorer(const MLPClassifier& model) {
  return [model](const Matrix& x) { return model.regression_estimate(x); };
}

nlohmann::json RiskEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["risk"] = risk;
  j["bayes_risk"] = bayes_risk;
  j["excess"] = excess;
  j["quadrature"] = quadrature;
  j["risk_std_error"] = risk_std_error;
  j["excess_std_error"] = excess_std_error;
  return nlohmann::json(j);
}

ProblemGrid::ProblemGrid(const MixtureProblem& problem, const QuadratureSpec& spec)
    : problem_(problem), rule_(spec, problem.dimension()) {
  const Eigen::Index n = rule_.size();
  h1_.resize(n);
  h2_.resize(n);
  f_p_.resize(n);
  defined_.assign(static_cast<std::size_t>(n), true);
  const double s = problem_.s();
  const Matrix& pts = rule_.points();
  std::vector<double> x(static_cast<std::size_t>(pts.cols()));
  double bayes = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < pts.cols(); ++j) x[static_cast<std::size_t>(j)] = pts(i, j);
    h1_[i] = problem_.h1()(x);
    h2_[i] = problem_.h2(x);
    if (h1_[i] == 0.0 && h2_[i] == 0.0) {
      defined_[static_cast<std::size_t>(i)] = false;
      f_p_[i] = 0.0;
    } else {
      f_p_[i] = regression_from_densities(h1_[i], h2_[i], s);
    }
    bayes += bayes_from_densities(h1_[i], h2_[i], s) > 0 ? (1.0 - s) * h2_[i] : s * h1_[i];
  }
  bayes_risk_ = bayes * rule_.weight();
}

Vector ProblemGrid::evaluate(const BatchScorer& f) const {
  Vector values = f(rule_.points());
  if (values.size() != rule_.size()) throw ShapeError("scorer returned the wrong length");
  return values;
}

RiskEstimate ProblemGrid::risk(const Vector& f) const {
  if (f.size() != rule_.size()) throw ShapeError("decision values do not match the grid");
  const double s = problem_.s();
  const Eigen::Index n = rule_.size();
  double sum = 0.0, sum_sq = 0.0, ex = 0.0, ex_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wrong_normal = s * h1_[i];
    const double wrong_anomaly = (1.0 - s) * h2_[i];
    const double v = f[i] >= 0.0 ? wrong_anomaly : wrong_normal;
    const double b =
        bayes_from_densities(h1_[i], h2_[i], s) > 0 ? wrong_anomaly : wrong_normal;
    sum += v;
    sum_sq += v * v;
    ex += v - b;
    ex_sq += (v - b) * (v - b);
  }
  RiskEstimate r;
  const double w = rule_.weight();
  r.risk = sum * w;
  r.bayes_risk = bayes_risk_;
  r.excess = ex * w;
  r.quadrature = rule_.spec().describe();
  if (rule_.spec().kind == QuadratureSpec::Kind::kMonteCarlo && n > 1) {
    const double dn = static_cast<double>(n);
    r.risk_std_error = std::sqrt(std::max(0.0, sum_sq / dn - r.risk * r.risk) / (dn - 1.0));
    r.excess_std_error =
        std::sqrt(std::max(0.0, ex_sq / dn - r.excess * r.excess) / (dn - 1.0));
  }
  return r;
}

double ProblemGrid::symmetric_difference(const Vector& f, double rho) const {
  if (f.size() != rule_.size()) throw ShapeError("decision values do not match the grid");
  if (!(rho > 0.0)) throw InvalidParameterError("rho must be positive");
  // Points with h1 = h2 = 0 lie outside the level set.
  Eigen::Index mismatches = 0;
  for (Eigen::Index i = 0; i < rule_.size(); ++i) {
    const bool truth = defined_[static_cast<std::size_t>(i)] &&
                       level_set_from_densities(h1_[i], h2_[i], rho);
    if ((f[i] >= 0.0) != truth) ++mismatches;
  }
  return static_cast<double>(mismatches) * rule_.weight();
}

double ProblemGrid::sup_error(const Vector& g) const {
  if (g.size() != rule_.size()) throw ShapeError("values do not match the grid");
  double sup = 0.0;
  for (Eigen::Index i = 0; i < rule_.size(); ++i)
    if (defined_[static_cast<std::size_t>(i)]) sup = std::max(sup, std::abs(g[i] - f_p_[i]));
  return sup;
}

double ProblemGrid::margin_mass(double t) const {
  const double s = problem_.s();
  double mass = 0.0;
  for (Eigen::Index i = 0; i < rule_.size(); ++i)
    if (defined_[static_cast<std::size_t>(i)] && std::abs(f_p_[i]) <= t)
      mass += s * h1_[i] + (1.0 - s) * h2_[i];
  return mass * rule_.weight();
}

RiskEstimate misclassification_risk(const MixtureProblem& problem, const BatchScorer& f,
                                    const QuadratureSpec& quadrature) {
  ProblemGrid grid(problem, quadrature);
  return grid.risk(grid.evaluate(f));
}

double symmetric_difference_error(const MixtureProblem& problem, const BatchScorer& f,
                                  double rho, const QuadratureSpec& quadrature) {
  ProblemGrid grid(problem, quadrature);
  return grid.symmetric_difference(grid.evaluate(f), rho);
}

double comparison_constant(double q, double c0) {
  if (!(q > 0.0)) throw DomainError("comparison constant needs q > 0");
  if (!(c0 > 0.0)) throw InvalidParameterError("c0 must be positive");
  return std::pow(c0, 1.0 / q) / (2.0 * q) * std::pow(q + 1.0, 1.0 + 1.0 / q);
}

nlohmann::json BoundCheck::to_json() const {
  nlohmann::ordered_json j;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["sup_error"] = sup_error;
  j["slack"] = slack;
  j["holds"] = holds;
  j["quadrature"] = quadrature;
  return nlohmann::json(j);
}

BoundCheck theorem1_bound_check(const ProblemGrid& grid, const Vector& f, double tau,
                                int k, const NoiseCondition& noise, double slack) {
  const ActivationSpec sign_map = ActivationSpec::approx_sign(k, tau);
  const Vector mapped = f.unaryExpr([&sign_map](double v) { return sign_map.apply(v); });
  BoundCheck check;
  check.lhs = grid.risk(mapped).excess;
  check.sup_error = grid.sup_error(f);
  check.rhs = 4.0 * noise.c0 * std::pow(k * tau + check.sup_error, noise.q + 1.0);
  check.slack = slack;
  check.holds = check.lhs <= check.rhs + slack;
  check.quadrature = grid.rule().spec().describe();
  return check;
}

BoundCheck theorem1_bound_check(const BatchScorer& f, const MixtureProblem& problem,
                                double tau, int k, const NoiseCondition& noise,
                                const QuadratureSpec& quadrature, double slack) {
  ProblemGrid grid(problem, quadrature);
  return theorem1_bound_check(grid, grid.evaluate(f), tau, k, noise, slack);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidParameterError("spearman needs two equal-length samples of size >= 2");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw UndefinedMetricError("constant sample has no rank correlation");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace synad
