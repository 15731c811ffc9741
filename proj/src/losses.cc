#include "synad/losses.h"

#include <cmath>

#include "synad/errors.h"

namespace synad {

double hinge_loss(double u) { return u < 1.0 ? 1.0 - u : 0.0; }

double hinge_derivative(double u) { return u < 1.0 ? -1.0 : 0.0; }

double logistic_loss(double u) {
  if (u >= 0.0) return std::log1p(std::exp(-u));
  return -u + std::log1p(std::exp(u));
}

double logistic_derivative(double u) {
  if (u >= 0.0) {
    const double e = std::exp(-u);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(u));
}

double loss_value(Loss loss, double margin) {
  return loss == Loss::kHinge ? hinge_loss(margin) : logistic_loss(margin);
}

double loss_derivative(Loss loss, double margin) {
  return loss == Loss::kHinge ? hinge_derivative(margin)
                              : logistic_derivative(margin);
}

std::string to_string(Loss loss) {
  return loss == Loss::kHinge ? "hinge" : "logistic";
}

Loss parse_loss(const std::string& text) {
  if (text == "hinge") return Loss::kHinge;
  if (text == "logistic") return Loss::kLogistic;
  throw InvalidParameterError("unknown loss '" + text + "'");
}

}  // namespace synad
