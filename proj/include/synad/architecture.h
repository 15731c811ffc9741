#ifndef SYNAD_ARCHITECTURE_H_
#define SYNAD_ARCHITECTURE_H_

#include <string>

namespace synad {

// Network size that attains the minimax excess-risk rate for a Hoelder-alpha
// regression function in d dimensions under a noise exponent q:
//   N   = ceil((n / ln(n)^4)^(d / (d + alpha (q + 2))))
//   tau = N^(-alpha/d)
//   L*  = 8 + (m + 5)(1 + ceil(log2 max{d, alpha}))
//   w*  = 6 (d + ceil(alpha)) N
//   v*  = 141 (d + alpha + 1)^(3 + d) N (m + 6)
//   K*  = 1
// Counts are doubles: N grows like a power of n and v* like (d + alpha)^d,
// so both overflow 64-bit integers for realistic inputs. Values below 2^53
// are exact integers. The logarithm is natural.
struct ArchitecturePlan {
  double n_min = 0.0;
  double alpha = 0.0;
  int d = 0;
  double q = 0.0;
  int m = 0;
  double radius = 1.0;

  double exponent = 0.0;  // d / (d + alpha (q + 2))
  double N = 0.0;
  double tau = 0.0;
  double depth = 0.0;      // L*
  double width = 0.0;      // w*
  double nonzeros = 0.0;   // v*
  double bound = 1.0;      // K*
  // The approximation lemma behind the plan needs N >= max{(alpha+1)^d,
  // (r+1) e^d}; false means n_min is too small for the guarantee.
  bool approximation_regime = false;

  std::string to_json() const;
};

// Requires n_min >= 3, alpha > 0, d >= 1, q >= 0, m >= 1, r > 0; throws
// InvalidParameterError otherwise.
ArchitecturePlan architecture_plan(double n_min, double alpha, int d, double q,
                                   int m, double radius = 1.0);

}  // namespace synad

#endif  // SYNAD_ARCHITECTURE_H_
