#pragma once

#include <Eigen/Core>

#include "caustic/common.hpp"

namespace caustic {

inline constexpr double kThetaMin = 0.1;
inline constexpr double kThetaMax = kPi / 2.0 - 0.1;

/// Incidence angle Theta measured from the y axis, and the derived
/// quantities shared by every module.
struct Incidence {
  double theta = 0.0;
  double xi0 = 0.0;   // cos Theta
  double eta0 = 0.0;  // sin Theta
  Complex beta;       // 1 + 2 i xi0
  double x_c = 0.0;   // caustic line, xi0^2
};

/// Throws std::invalid_argument outside [theta_min, theta_max].
Incidence make_incidence(double theta, double theta_min = kThetaMin,
                         double theta_max = kThetaMax);

/// A(y) = exp(-y^2 / (2 sigma^2)) and its k-scaled transform.
struct GaussianEnvelope {
  double sigma = 1.0;

  double operator()(double y) const;
  /// sqrt(k/2pi) * integral A(y) exp(-i k y eta) dy
  double spectrum(double eta, double k) const;
  /// |eta| beyond which spectrum/spectrum(0) < floor.
  double spectral_half_width(double k, double floor = 1e-14) const;
};

Complex q_poly(double s, const Incidence& inc);

/// sqrt(w conj(beta)) / sqrt(conj(beta)). Continuous along q(s), s real,
/// because q(s)/beta never crosses the negative real axis. Throws
/// std::domain_error on the excluded ray w = -t beta, t >= 0.
Complex sqrt_branch_safe(Complex w, const Incidence& inc);

Eigen::Matrix2cd initial_hessian(const Incidence& inc);
/// (M0 - s beta/2 I) / q(s)
Eigen::Matrix2cd hessian(double s, const Incidence& inc);
/// M0 (I + 2 s M0)^{-1}, solved numerically.
Eigen::Matrix2cd hessian_by_inverse(double s, const Incidence& inc);

Complex m11(double s, const Incidence& inc);
Complex m22(double s, const Incidence& inc);

/// Ray quantities for the beam launched from (0, z).
struct BeamFrame {
  double s = 0.0;
  double z = 0.0;
  Eigen::Vector2d position;  // (x(s), y(s))
  Eigen::Vector2d momentum;  // (xi(s), eta0)
  double phase_s = 0.0;      // S(s; z)
  Complex q;
  Eigen::Matrix2cd hessian;
  Complex amplitude;         // a(s; z)
};

BeamFrame beam_frame(double s, double z, const Incidence& inc, const GaussianEnvelope& env);

/// Phase S + (x - x(s*)) xi(s*) + m11(s*) (x - x(s*))^2 / 2 of the beam
/// from (0, z), taken at the ray parameter s* = (y - z)/(2 eta0).
Complex beam_phase(double x, double y, double z, const Incidence& inc);
Complex beam_amplitude(double y, double z, const Incidence& inc, const GaussianEnvelope& env);

/// beam_amplitude * exp(i k beam_phase)
Complex beam_value(double x, double y, double z, const Incidence& inc, double k,
                   const GaussianEnvelope& env);

} // namespace caustic
