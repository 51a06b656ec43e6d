#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace likint {

// Dense math types, templated on the scalar so the numeric kernels can be
// instantiated in higher precision when cross-checking results.
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;
using Index = Eigen::Index;

}  // namespace likint
