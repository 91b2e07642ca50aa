#pragma once

#include <array>

#include "caustic/beam.hpp"

namespace caustic {

/// Fixed (delta, eta) at which the phases are evaluated; delta = x_c - x.
struct PhaseContext {
  Incidence inc;
  double delta = 0.0;
  double eta = 0.0;
};

/// Throws std::invalid_argument unless 0 <= delta <= 1.
PhaseContext make_phase_context(const Incidence& inc, double delta, double eta);

enum class PhaseKind { airy, beam };

/// -theta^3/3 + theta (delta - 2 eta0 eta)
double phi_a(const PhaseContext& ctx, double theta);
/// phi_a + m11(xi0 + theta) (theta^2 - delta)^2 / 2
Complex phi_g(const PhaseContext& ctx, double theta);
Complex phase_value(const PhaseContext& ctx, double theta, PhaseKind kind);

/// n-th theta derivative, 0 <= n <= 4.
Complex phi_derivative(const PhaseContext& ctx, double theta, int n, PhaseKind kind);

/// Taylor coefficients m11^{(j)}(s) / j!, j = 0..4.
std::array<Complex, 5> m11_taylor(double s, const Incidence& inc);

/// Z(z) = (e^{iz} - 1 - iz + z^2/2) / z^3, continuous at 0 with Z(0) = -i/6.
Complex z_remainder(Complex z);

/// Smallest c0 found on a scan such that |phi'(theta)| >= theta^2/16 for
/// |theta| >= c0 (1 + |eta|^{1/2}), for both phases, 0 <= delta <= 1 and
/// |eta| <= eta_limit.
struct GradientCalibration {
  double c0 = 0.0;
  double c0_airy = 0.0;
  double c0_beam = 0.0;
  double eta_limit = 0.0;
  double theta_limit = 0.0;
};

GradientCalibration calibrate_gradient_radius(const Incidence& inc, double eta_limit = 16.0);

} // namespace caustic
