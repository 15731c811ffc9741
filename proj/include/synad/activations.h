#ifndef SYNAD_ACTIVATIONS_H_
#define SYNAD_ACTIVATIONS_H_

#include <string>

namespace synad {

// ReLU^k: (max{0, x})^k. Throws InvalidParameterError for k < 1.
double relu_k(double x, int k);

// Generalized approx-sign sigma^k_tau: a continuous surrogate for sign()
// built from 2(k+1) shifted ReLU^k units,
//
//   1/(k! tau^k) sum_l (-1)^l C(k,l) [relu_k(x - l tau) - relu_k(-x - l tau)].
//
// It is odd, nondecreasing, saturates to exactly +-1 for |x| >= k*tau, and
// for k = 1 equals the piecewise map {1 if x >= tau; x/tau on [-tau, tau);
// -1 if x < -tau}. Requires tau in (0, 1] and k >= 1.
double approx_sign(double x, double tau, int k = 1);

// d/dx approx_sign(x, tau, k); the k = 1 kinks at +-tau take the value 0.
double approx_sign_derivative(double x, double tau, int k = 1);

// sign() with the tie at zero mapped to +1.
inline double sign_pos(double x) { return x >= 0.0 ? 1.0 : -1.0; }

struct ActivationSpec {
  enum class Kind { kRelu, kLeakyRelu, kReluK, kApproxSign };

  Kind kind = Kind::kRelu;
  double slope = 0.01;  // leaky_relu
  int k = 1;            // relu_k, approx_sign
  double tau = 0.1;     // approx_sign

  static ActivationSpec relu();
  static ActivationSpec leaky_relu(double slope);
  static ActivationSpec relu_power(int k);
  static ActivationSpec approx_sign(int k, double tau);

  // Throws InvalidParameterError when a parameter is out of range.
  void validate() const;

  double apply(double x) const;
  double derivative(double x) const;

  std::string to_string() const;
  static ActivationSpec parse(const std::string& text);

  bool operator==(const ActivationSpec&) const = default;
};

}  // namespace synad

#endif  // SYNAD_ACTIVATIONS_H_
