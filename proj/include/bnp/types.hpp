#pragma once

#include <complex>

#include <Eigen/Dense>

namespace bnp {

using Complex = std::complex<double>;

using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RowVectorXc = Eigen::Matrix<Complex, 1, Eigen::Dynamic>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace bnp
