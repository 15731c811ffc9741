#ifndef SYNAD_LOSSES_H_
#define SYNAD_LOSSES_H_

#include <string>

namespace synad {

enum class Loss { kLogistic, kHinge };

// max{0, 1 - u}
double hinge_loss(double u);
// Subgradient of the hinge loss; the kink u = 1 takes 0.
double hinge_derivative(double u);

// log(1 + exp(-u)), branching at u = 0 so neither side overflows.
double logistic_loss(double u);
// -1 / (1 + exp(u)), evaluated without overflow.
double logistic_derivative(double u);

double loss_value(Loss loss, double margin);
double loss_derivative(Loss loss, double margin);

std::string to_string(Loss loss);
Loss parse_loss(const std::string& text);

}  // namespace synad

#endif  // SYNAD_LOSSES_H_
