#pragma once

#include <Eigen/Dense>

namespace laxlab {

/// Matrix exponential by scaling and squaring with a degree-13 Pade core.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M);

}  // namespace laxlab
