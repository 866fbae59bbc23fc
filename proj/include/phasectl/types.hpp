#pragma once

#include <Eigen/Dense>
#include <limits>

namespace phasectl {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr Scalar kPi = 3.14159265358979323846;
inline constexpr Scalar kTwoPi = 2.0 * kPi;
inline constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

}  // namespace phasectl
