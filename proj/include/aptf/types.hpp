// types.hpp: shared numeric aliases

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace aptf {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class Port { left, right };

}  // namespace aptf
