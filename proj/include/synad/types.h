#ifndef SYNAD_TYPES_H_
#define SYNAD_TYPES_H_

#include <Eigen/Dense>

namespace synad {

// Row-per-sample point sets: row(i).data() is a contiguous feature vector.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace synad

#endif  // SYNAD_TYPES_H_
