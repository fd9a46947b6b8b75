#pragma once

#include <Eigen/Dense>

namespace horoball {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Incidence / membership tolerance used throughout the geometry layer.
inline constexpr double kFaceEps = 1e-9;

}  // namespace horoball
