#include "synad/architecture.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "synad/errors.h"

namespace synad {

ArchitecturePlan architecture_plan(double n_min, double alpha, int d, double q,
                                   int m, double radius) {
  if (!(n_min >= 3.0) || !std::isfinite(n_min))
    throw InvalidParameterError("n_min must be >= 3");
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InvalidParameterError("alpha must be positive");
  if (d < 1) throw InvalidParameterError("d must be >= 1");
  if (!(q >= 0.0) || !std::isfinite(q)) throw InvalidParameterError("q must be >= 0");
  if (m < 1) throw InvalidParameterError("m must be >= 1");
  if (!(radius > 0.0)) throw InvalidParameterError("Hoelder radius must be positive");

  ArchitecturePlan plan;
  plan.n_min = n_min;
  plan.alpha = alpha;
  plan.d = d;
  plan.q = q;
  plan.m = m;
  plan.radius = radius;
  const double dd = d;
  plan.exponent = dd / (dd + alpha * (q + 2.0));
  const double log_n = std::log(n_min);
  plan.N = std::max(1.0, std::ceil(std::pow(n_min / std::pow(log_n, 4), plan.exponent)));
  plan.tau = std::pow(plan.N, -alpha / dd);
  plan.depth = 8.0 + (m + 5.0) * (1.0 + std::ceil(std::log2(std::max(dd, alpha))));
  plan.width = 6.0 * (dd + std::ceil(alpha)) * plan.N;
  plan.nonzeros = 141.0 * std::pow(dd + alpha + 1.0, 3.0 + dd) * plan.N * (m + 6.0);
  plan.bound = 1.0;
  plan.approximation_regime =
      plan.N >= std::max(std::pow(alpha + 1.0, dd), (radius + 1.0) * std::exp(dd));
  return plan;
}

std::string ArchitecturePlan::to_json() const {
  nlohmann::ordered_json j;
  j["n_min"] = n_min;
  j["alpha"] = alpha;
  j["d"] = d;
  j["q"] = q;
  j["m"] = m;
  j["radius"] = radius;
  j["exponent"] = exponent;
  j["N"] = N;
  j["tau"] = tau;
  j["L"] = depth;
  j["w"] = width;
  j["v"] = nonzeros;
  j["K"] = bound;
  j["approximation_regime"] = approximation_regime;
  return j.dump(2);
}

}  // namespace synad
