#pragma once

#include <Eigen/Core>

#include "caustic/common.hpp"

namespace caustic {

/// |z| at or above which the large-argument expansion is used.
inline constexpr double kAiryCrossoverRadius = 7.0;
/// Disk on which the Maclaurin series is summed directly about 0.
inline constexpr double kAiryMaclaurinRadius = 2.0;

enum class AiryMethod { maclaurin, taylor_march, asymptotic, rotated };

const char* to_string(AiryMethod m);

struct AiryValue {
  Complex z;
  Complex ai;
  Complex ai_prime;
  AiryMethod method = AiryMethod::maclaurin;
  bool overflow = false;
};

/// Ai(z) = exp(log_scale) * ai and Ai'(z) = exp(log_scale) * ai_prime.
/// Never overflows; use this when forming ratios of large values.
struct ScaledAiry {
  Complex ai;
  Complex ai_prime;
  double log_scale = 0.0;
  AiryMethod method = AiryMethod::maclaurin;
};

ScaledAiry airy_scaled(Complex z);

/// Unscaled values. On overflow the flag is set and the affected
/// components are signed infinities. Throws std::domain_error for
/// non-finite z.
AiryValue airy(Complex z);

Complex ai(Complex z);
Complex ai_prime(Complex z);

/// Ai(num) / Ai(den), formed from scaled values.
Complex ai_ratio(Complex num, Complex den);

/// Leading large-argument form (1/(2 sqrt(pi))) z^{-1/4} exp(-(2/3) z^{3/2})
/// with principal branches. Throws std::domain_error at z = 0.
Complex ai_tilde(Complex z);

/// Ai^{(m)}(x) = p_m(x) Ai(x) + q_m(x) Ai'(x). Coefficients are stored
/// lowest degree first with trailing zeros removed; the zero polynomial
/// has size 0.
struct AiryDerivativePolys {
  int order = 0;
  Eigen::VectorXd p;
  Eigen::VectorXd q;
};

AiryDerivativePolys airy_derivative_polys(int m);

Complex ai_derivative(Complex z, int m);

template <typename Scalar>
Scalar polyval(const Eigen::VectorXd& coeffs, Scalar x) {
  Scalar acc{0};
  for (Eigen::Index i = coeffs.size(); i-- > 0;) acc = acc * x + Scalar(coeffs[i]);
  return acc;
}

} // namespace caustic
