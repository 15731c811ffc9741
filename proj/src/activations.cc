#include "synad/activations.h"

#include <cmath>
#include <sstream>
#include <vector>

#include "synad/errors.h"

namespace synad {

namespace {

void check_k(int k) {
  if (k < 1) throw InvalidParameterError("ReLU power k must be >= 1");
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw InvalidParameterError("approx-sign bandwidth tau must be in (0, 1]");
}

double int_pow(double base, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= base;
  return out;
}

double binomial(int n, int r) {
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// Positive-half sum for x >= 0; the mirrored sum vanishes there.
double approx_sign_nonneg(double x, double tau, int k) {
  if (x >= k * tau) return 1.0;
  double acc = 0.0;
  double sign = 1.0;
  for (int l = 0; l <= k; ++l) {
    const double shifted = x - l * tau;
    if (shifted > 0.0) acc += sign * binomial(k, l) * int_pow(shifted, k);
    sign = -sign;
  }
  return acc / (factorial(k) * int_pow(tau, k));
}

double approx_sign_derivative_nonneg(double x, double tau, int k) {
  if (x >= k * tau) return 0.0;
  if (k == 1) return x < tau ? 1.0 / tau : 0.0;
  double acc = 0.0;
  double sign = 1.0;
  for (int l = 0; l <= k; ++l) {
    const double shifted = x - l * tau;
    if (shifted > 0.0) acc += sign * binomial(k, l) * k * int_pow(shifted, k - 1);
    sign = -sign;
  }
  return acc / (factorial(k) * int_pow(tau, k));
}

}  // namespace

double relu_k(double x, int k) {
  check_k(k);
  return x > 0.0 ? int_pow(x, k) : 0.0;
}

double approx_sign(double x, double tau, int k) {
  check_tau(tau);
  check_k(k);
  if (x >= 0.0) return approx_sign_nonneg(x, tau, k);
  return -approx_sign_nonneg(-x, tau, k);
}

double approx_sign_derivative(double x, double tau, int k) {
  check_tau(tau);
  check_k(k);
  return approx_sign_derivative_nonneg(std::fabs(x), tau, k);
}

ActivationSpec ActivationSpec::relu() { return ActivationSpec{}; }

ActivationSpec ActivationSpec::leaky_relu(double slope) {
  ActivationSpec spec;
  spec.kind = Kind::kLeakyRelu;
  spec.slope = slope;
  spec.validate();
  return spec;
}

ActivationSpec ActivationSpec::relu_power(int k) {
  ActivationSpec spec;
  spec.kind = Kind::kReluK;
  spec.k = k;
  spec.validate();
  return spec;
}

ActivationSpec ActivationSpec::approx_sign(int k, double tau) {
  ActivationSpec spec;
  spec.kind = Kind::kApproxSign;
  spec.k = k;
  spec.tau = tau;
  spec.validate();
  return spec;
}

void ActivationSpec::validate() const {
  switch (kind) {
    case Kind::kRelu:
      return;
    case Kind::kLeakyRelu:
      if (!(slope > 0.0 && slope < 1.0))
        throw InvalidParameterError("leaky ReLU slope must be in (0, 1)");
      return;
    case Kind::kReluK:
      check_k(k);
      return;
    case Kind::kApproxSign:
      check_k(k);
      check_tau(tau);
      return;
  }
}

double ActivationSpec::apply(double x) const {
  switch (kind) {
    case Kind::kRelu:
      return x > 0.0 ? x : 0.0;
    case Kind::kLeakyRelu:
      return x > 0.0 ? x : slope * x;
    case Kind::kReluK:
      return relu_k(x, k);
    case Kind::kApproxSign:
      return synad::approx_sign(x, tau, k);
  }
  return 0.0;
}

double ActivationSpec::derivative(double x) const {
  switch (kind) {
    case Kind::kRelu:
      return x > 0.0 ? 1.0 : 0.0;
    case Kind::kLeakyRelu:
      return x > 0.0 ? 1.0 : slope;
    case Kind::kReluK:
      return x > 0.0 ? k * int_pow(x, k - 1) : 0.0;
    case Kind::kApproxSign:
      return approx_sign_derivative(x, tau, k);
  }
  return 0.0;
}

std::string ActivationSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::kRelu:
      out << "relu";
      break;
    case Kind::kLeakyRelu:
      out << "leaky_relu:" << slope;
      break;
    case Kind::kReluK:
      out << "relu_k:" << k;
      break;
    case Kind::kApproxSign:
      out << "approx_sign:" << k << ":" << tau;
      break;
  }
  return out.str();
}

// Accepts "relu", "leaky_relu[:slope]", "relu_k:k", "approx_sign:k:tau".
ActivationSpec ActivationSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.empty()) throw InvalidParameterError("empty activation spec");
  try {
    const std::string& name = parts[0];
    if (name == "relu" && parts.size() == 1) return relu();
    if (name == "leaky_relu" && parts.size() <= 2)
      return leaky_relu(parts.size() == 2 ? std::stod(parts[1]) : 0.01);
    if (name == "relu_k" && parts.size() == 2)
      return relu_power(std::stoi(parts[1]));
    if (name == "approx_sign" && parts.size() == 3)
      return approx_sign(std::stoi(parts[1]), std::stod(parts[2]));
  } catch (const std::logic_error&) {
    // fall through to the error below
  }
  throw InvalidParameterError("unrecognized activation spec '" + text + "'");
}

}  // namespace synad
