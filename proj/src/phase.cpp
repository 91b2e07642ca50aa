#include "caustic/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace caustic {

PhaseContext make_phase_context(const Incidence& inc, double delta, double eta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("make_phase_context: delta must lie in [0, 1]");
  if (!std::isfinite(eta)) throw std::invalid_argument("make_phase_context: non-finite eta");
  return {inc, delta, eta};
}

double phi_a(const PhaseContext& ctx, double theta) {
  return -theta * theta * theta / 3.0 + theta * (ctx.delta - 2.0 * ctx.inc.eta0 * ctx.eta);
}

Complex phi_g(const PhaseContext& ctx, double theta) {
  const double g = theta * theta - ctx.delta;
  return phi_a(ctx, theta) + 0.5 * m11(ctx.inc.xi0 + theta, ctx.inc) * g * g;
}

Complex phase_value(const PhaseContext& ctx, double theta, PhaseKind kind) {
  return kind == PhaseKind::airy ? Complex(phi_a(ctx, theta)) : phi_g(ctx, theta);
}

std::array<Complex, 5> m11_taylor(double s, const Incidence& inc) {
  // m11 = r / q with r linear and q quadratic in s
  const Complex r0 = (2.0 * kI - (inc.xi0 + s) * inc.beta) / 2.0;
  const Complex r1 = -inc.beta / 2.0;
  const Complex q0 = q_poly(s, inc);
  const Complex q1 = 2.0 * kI - 2.0 * s * inc.beta;
  const Complex q2 = -inc.beta;
  std::array<Complex, 5> c{};
  c[0] = r0 / q0;
  c[1] = (r1 - q1 * c[0]) / q0;
  for (int n = 2; n < 5; ++n) c[n] = -(q1 * c[n - 1] + q2 * c[n - 2]) / q0;
  return c;
}

Complex phi_derivative(const PhaseContext& ctx, double theta, int n, PhaseKind kind) {
  if (n < 0 || n > 4) throw std::invalid_argument("phi_derivative: order must be 0..4");
  const double lin = ctx.delta - 2.0 * ctx.inc.eta0 * ctx.eta;
  const double airy[5] = {phi_a(ctx, theta), -theta * theta + lin, -2.0 * theta, -2.0, 0.0};
  if (kind == PhaseKind::airy) return airy[n];

  const double t2 = theta * theta - ctx.delta;
  const double g[5] = {t2 * t2, 4.0 * theta * t2, 12.0 * theta * theta - 4.0 * ctx.delta,
                       24.0 * theta, 24.0};
  const std::array<Complex, 5> c = m11_taylor(ctx.inc.xi0 + theta, ctx.inc);
  static constexpr double binom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  static constexpr double fact[5] = {1, 1, 2, 6, 24};
  Complex w = 0.0;
  for (int l = 0; l <= n; ++l) w += binom[n][l] * fact[n - l] * c[n - l] * g[l];
  return airy[n] + 0.5 * w;
}

Complex z_remainder(Complex z) {
  if (std::abs(z) < 1.0) {
    // sum_{n>=3} (iz)^n / n! / z^3
    Complex term = Complex(0.0, -1.0) / 6.0;  // i^3 / 3!
    Complex sum = term;
    for (int n = 4; n < 29; ++n) {
      term *= kI * z / double(n);
      sum += term;
    }
    return sum;
  }
  return (std::exp(kI * z) - 1.0 - kI * z + 0.5 * z * z) / (z * z * z);
}

GradientCalibration calibrate_gradient_radius(const Incidence& inc, double eta_limit) {
  if (!(eta_limit > 0.0)) throw std::invalid_argument("calibrate_gradient_radius: eta_limit");
  GradientCalibration cal;
  cal.eta_limit = eta_limit;
  cal.theta_limit = 0.0;
  const double step = 0.01;

  std::vector<double> etas;
  for (double e = 0.0; e <= eta_limit + 1e-12; e += (e < 2.0 ? 0.05 : 0.25)) {
    etas.push_back(e);
    if (e > 0.0) etas.push_back(-e);
  }
  const double deltas[] = {0.0, 0.125, 0.25, 0.5, 0.75, 1.0};

  for (PhaseKind kind : {PhaseKind::airy, PhaseKind::beam}) {
    double worst = 0.0;
    for (double d : deltas) {
      for (double e : etas) {
        const PhaseContext ctx{inc, d, e};
        // the cubic term dominates well inside this radius
        const double limit = 6.0 * (1.0 + std::sqrt(std::abs(e))) + 4.0;
        cal.theta_limit = std::max(cal.theta_limit, limit);
        // outermost theta on each side where the bound fails
        for (double sign : {1.0, -1.0}) {
          for (double t = limit; t >= 0.0; t -= step) {
            if (std::abs(phi_derivative(ctx, sign * t, 1, kind)) < t * t / 16.0) {
              worst = std::max(worst, (t + step) / (1.0 + std::sqrt(std::abs(e))));
              break;
            }
          }
        }
      }
    }
    (kind == PhaseKind::airy ? cal.c0_airy : cal.c0_beam) = worst;
  }
  cal.c0 = std::max(cal.c0_airy, cal.c0_beam);
  return cal;
}

} // namespace caustic
