#pragma once

#include <complex>
#include <numbers>

namespace pencil {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace pencil
