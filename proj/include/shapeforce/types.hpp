#pragma once

#include <Eigen/Core>

namespace shapeforce {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kGravity = 9.81;  // m/s^2

// Signal component indices, shared by triggers and sensitivity vectors.
enum SignalAxis : int { kTx = 0, kTy = 1, kTz = 2, kRx = 3, kRy = 4, kRz = 5 };

}  // namespace shapeforce
