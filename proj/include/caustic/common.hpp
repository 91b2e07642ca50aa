#pragma once

#include <complex>
#include <numbers>

namespace caustic {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// alpha = exp(i pi/3)
inline constexpr Complex kAlpha{0.5, std::numbers::sqrt3 / 2.0};

} // namespace caustic
