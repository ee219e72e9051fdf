#pragma once

#include <complex>

#include <Eigen/Dense>

namespace pfc {

using Complex = std::complex<double>;   // same alias as the grassmann kernel
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

} // namespace pfc
