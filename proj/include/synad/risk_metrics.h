#ifndef SYNAD_RISK_METRICS_H_
#define SYNAD_RISK_METRICS_H_

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "synad/mixture.h"
#include "synad/mlp.h"
#include "synad/quadrature.h"

namespace synad {

// A decision function evaluated on a batch of points (rows). Positive means
// normal; sign(0) counts as +1 throughout.
using BatchScorer = std::function<Vector(const Matrix&)>;

BatchScorer pointwise_scorer(std::function<double(std::span<const double>)> f);
// Raw network output f (not the probability mapping).
BatchScorer raw_scorer(const MLPClassifier& model);
// Estimate of f_P carried by the model (see regression_estimate).
BatchScorer regression_scorer(const MLPClassifier& model);

struct RiskEstimate {
  double risk = 0.0;
  double bayes_risk = 0.0;
  double excess = 0.0;
  std::string quadrature;
  // Monte Carlo standard errors of risk and excess; 0 for grids.
  double risk_std_error = 0.0;
  double excess_std_error = 0.0;

  nlohmann::json to_json() const;
};

// Densities, regression function and Bayes labels of a problem tabulated on
// a quadrature rule, so many decision functions can be scored cheaply.
// Points where h1 = h2 = 0 (possible only without synthetic anomalies) carry
// no P_X mass and are skipped by the sup-norm and noise computations.
class ProblemGrid {
 public:
  ProblemGrid(const MixtureProblem& problem, const QuadratureSpec& spec);

  const MixtureProblem& problem() const { return problem_; }
  const QuadratureRule& rule() const { return rule_; }
  const Matrix& points() const { return rule_.points(); }
  const Vector& h1() const { return h1_; }
  const Vector& h2() const { return h2_; }
  const Vector& regression() const { return f_p_; }
  const std::vector<bool>& defined() const { return defined_; }
  double bayes_risk() const { return bayes_risk_; }

  // Misclassification risk of the decision values f (one per grid point)
  //   R(f) = int [s h1 1{f < 0} + (1 - s) h2 1{f >= 0}] dmu.
  RiskEstimate risk(const Vector& f) const;
  // mu({f >= 0} symmetric-difference {h1/h2 >= rho}).
  double symmetric_difference(const Vector& f, double rho) const;
  // max over defined grid points of |g - f_P|.
  double sup_error(const Vector& g) const;
  // P_X(|f_P| <= t) = int 1{|f_P| <= t} (s h1 + (1 - s) h2) dmu.
  double margin_mass(double t) const;

  Vector evaluate(const BatchScorer& f) const;

 private:
  MixtureProblem problem_;
  QuadratureRule rule_;
  Vector h1_, h2_, f_p_;
  std::vector<bool> defined_;
  double bayes_risk_ = 0.0;
};

RiskEstimate misclassification_risk(const MixtureProblem& problem, const BatchScorer& f,
                                    const QuadratureSpec& quadrature);

double symmetric_difference_error(const MixtureProblem& problem, const BatchScorer& f,
                                  double rho, const QuadratureSpec& quadrature);

// C_q = c0^(1/q) / (2q) * (q + 1)^(1 + 1/q), relating the level-set error to
// the excess risk: S <= C_q (R(f) - R*)^(q/(q+1)). Throws DomainError for
// q <= 0 and InvalidParameterError for c0 <= 0.
double comparison_constant(double q, double c0);

struct BoundCheck {
  double lhs = 0.0;        // R(sigma^k_tau o f) - R*
  double rhs = 0.0;        // 4 c0 (k tau + sup|f - f_P|)^(q + 1)
  double sup_error = 0.0;
  double slack = 0.0;
  bool holds = false;
  std::string quadrature;

  nlohmann::json to_json() const;
};

// Checks R(sigma^k_tau o f) - R* <= 4 c0 (k tau + ||f - f_P||_inf)^(q + 1)
// with the sup-norm taken over the grid; `holds` allows `slack` for
// quadrature error. f is the regression estimate (values in [-1, 1] are
// expected but not required).
BoundCheck theorem1_bound_check(const ProblemGrid& grid, const Vector& f, double tau,
                                int k, const NoiseCondition& noise,
                                double slack = 1e-3);
BoundCheck theorem1_bound_check(const BatchScorer& f, const MixtureProblem& problem,
                                double tau, int k, const NoiseCondition& noise,
                                const QuadratureSpec& quadrature, double slack = 1e-3);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace synad

#endif  // SYNAD_RISK_METRICS_H_
