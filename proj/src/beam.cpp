#include "caustic/beam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

namespace caustic {

Incidence make_incidence(double theta, double theta_min, double theta_max) {
  if (!(theta_min > 0.0) || !(theta_max < kPi / 2.0) || !(theta_min <= theta_max))
    throw std::invalid_argument("make_incidence: admissible range must lie inside (0, pi/2)");
  if (!(theta >= theta_min && theta <= theta_max))
    throw std::invalid_argument("make_incidence: theta = " + std::to_string(theta) +
                                " outside [" + std::to_string(theta_min) + ", " +
                                std::to_string(theta_max) + "]");
  Incidence inc;
  inc.theta = theta;
  inc.xi0 = std::cos(theta);
  inc.eta0 = std::sin(theta);
  inc.beta = Complex(1.0, 2.0 * inc.xi0);
  inc.x_c = inc.xi0 * inc.xi0;
  return inc;
}

double GaussianEnvelope::operator()(double y) const {
  return std::exp(-y * y / (2.0 * sigma * sigma));
}

double GaussianEnvelope::spectrum(double eta, double k) const {
  const double a = k * sigma * eta;
  return sigma * std::sqrt(k) * std::exp(-0.5 * a * a);
}

double GaussianEnvelope::spectral_half_width(double k, double floor) const {
  return std::sqrt(2.0 * std::log(1.0 / floor)) / (k * sigma);
}

Complex q_poly(double s, const Incidence& inc) {
  return 1.0 + 2.0 * kI * s - s * s * inc.beta;
}

Complex sqrt_branch_safe(Complex w, const Incidence& inc) {
  const Complex bc = std::conj(inc.beta);
  const Complex wb = w * bc;
  const double size = std::abs(w) * std::abs(bc);
  if (std::abs(wb.imag()) <= 1e-14 * size && wb.real() <= 0.0)
    throw std::domain_error("sqrt_branch_safe: argument on the excluded ray");
  return std::sqrt(wb) / std::sqrt(bc);
}

Eigen::Matrix2cd initial_hessian(const Incidence& inc) {
  const double x = inc.xi0, e = inc.eta0;
  Eigen::Matrix2d p, q;
  p << e * e, -e * x, -e * x, x * x;
  q << -x, -e, -e, x;
  q *= 0.5;
  return q.cast<Complex>() + kI * p.cast<Complex>();
}

Eigen::Matrix2cd hessian(double s, const Incidence& inc) {
  const Eigen::Matrix2cd shifted =
      initial_hessian(inc) - (0.5 * s * inc.beta) * Eigen::Matrix2cd::Identity();
  return shifted / q_poly(s, inc);
}

Eigen::Matrix2cd hessian_by_inverse(double s, const Incidence& inc) {
  const Eigen::Matrix2cd m0 = initial_hessian(inc);
  return m0 * (Eigen::Matrix2cd::Identity() + 2.0 * s * m0).inverse();
}

Complex m11(double s, const Incidence& inc) {
  return (2.0 * kI - (inc.xi0 + s) * inc.beta) / (2.0 * q_poly(s, inc));
}

Complex m22(double s, const Incidence& inc) {
  return (inc.xi0 - s) * inc.beta / (2.0 * q_poly(s, inc));
}

BeamFrame beam_frame(double s, double z, const Incidence& inc, const GaussianEnvelope& env) {
  BeamFrame f;
  f.s = s;
  f.z = z;
  f.position = {2.0 * s * inc.xi0 - s * s, z + 2.0 * s * inc.eta0};
  f.momentum = {inc.xi0 - s, inc.eta0};
  f.phase_s = inc.eta0 * z + 2.0 * s - 2.0 * s * s * inc.xi0 + (2.0 / 3.0) * s * s * s;
  f.q = q_poly(s, inc);
  f.hessian = hessian(s, inc);
  const Complex a0 = std::sqrt(-kI * m22(0.0, inc));
  f.amplitude = env(z) * a0 / sqrt_branch_safe(f.q, inc);
  return f;
}

Complex beam_phase(double x, double y, double z, const Incidence& inc) {
  const double s = (y - z) / (2.0 * inc.eta0);
  const double dx = x - (2.0 * s * inc.xi0 - s * s);
  const double phase_s = inc.eta0 * z + 2.0 * s - 2.0 * s * s * inc.xi0 + (2.0 / 3.0) * s * s * s;
  return phase_s + dx * (inc.xi0 - s) + 0.5 * m11(s, inc) * dx * dx;
}

Complex beam_amplitude(double y, double z, const Incidence& inc, const GaussianEnvelope& env) {
  const double s = (y - z) / (2.0 * inc.eta0);
  const Complex a0 = std::sqrt(-kI * m22(0.0, inc));
  return env(z) * a0 / sqrt_branch_safe(q_poly(s, inc), inc);
}

Complex beam_value(double x, double y, double z, const Incidence& inc, double k,
                   const GaussianEnvelope& env) {
  return beam_amplitude(y, z, inc, env) * std::exp(kI * k * beam_phase(x, y, z, inc));
}

} // namespace caustic
