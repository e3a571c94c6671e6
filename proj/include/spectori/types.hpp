#ifndef SPECTORI_TYPES_HPP
#define SPECTORI_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace spectori {

using cd = std::complex<double>;
using Grid2c = Eigen::ArrayXXcd;  // (n1, n2); row index follows gamma1
using Grid2r = Eigen::ArrayXXd;
using Vec3 = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cd kI{0.0, 1.0};

}  // namespace spectori

#endif
