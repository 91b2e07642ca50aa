#pragma once

#include <Eigen/Core>

#include "caustic/oscillatory.hpp"

namespace caustic {

enum class Route { exact, gaussian_beam };

const char* to_string(Route r);

struct GbOptions {
  double tol = 1e-10;  // absolute, on the k^{1/3}-scaled theta integral
  double tail_tol = 0.0;  // truncation target; 0 means tol
  double c0 = 0.0;     // gradient radius constant for this incidence
  double amp_bound = 0.0;
  bool use_damping_window = true;
  RealOfReal cutoff = cutoff_psi;
};

/// Calibrates c0 and the amplitude bound for inc.
GbOptions make_gb_options(const Incidence& inc, double tol = 1e-10);

/// conj(alpha) Ai(k^{2/3}(x - X)) / Ai(alpha k^{2/3} X), X = 1 - (eta0 + eta)^2.
/// eta is the offset from eta0.
Complex v_hat_exact(const Incidence& inc, double x, double k, double eta);

/// conj(alpha) k^{-1/6} / Ai(alpha k^{2/3} X)
Complex exact_prefactor(const Incidence& inc, double k, double eta);
/// 2 sqrt(pi xi0) e^{-i pi/4} exp(i k (2/3 xi0^3 - 2 eta eta0 xi0))
Complex gb_prefactor(const Incidence& inc, double k, double eta);

/// sqrt(q(xi0)) / (2 pi sqrt(q(xi0 + theta))) against phi_g.
OscillatoryIntegrand gb_integrand(const PhaseContext& ctx);

struct GbSpectral {
  Complex value;
  QuadratureResult integral;  // the theta integral I, before the prefactor
  TruncationPlan plan;
};

/// k^{1/6} P_GB I. Requires 0 <= x_c - x <= 1.
GbSpectral v_hat_gb(const Incidence& inc, double x, double k, double eta, const GbOptions& opts);

struct TransmissionCoefficient {
  Complex t;
  Complex one_plus_t;
};

TransmissionCoefficient transmission_coeff(const Incidence& inc, double k, double eta);

struct EtaGrid {
  Eigen::VectorXd eta;
  double spacing = 0.0;
  double half_width = 0.0;
};

/// Uniform symmetric grid with spacing pi/(k y_window) reaching the point
/// where the envelope spectrum falls below floor.
EtaGrid make_eta_grid(double k, const GaussianEnvelope& env, double y_window, double floor = 1e-14);

struct SpectralProfile {
  Route route = Route::exact;
  double x = 0.0;
  double k = 0.0;
  Eigen::VectorXd eta;
  Eigen::VectorXcd values;
  Eigen::VectorXd errors;
};

SpectralProfile spectral_profile(Route route, const Incidence& inc, double x, double k,
                                 const EtaGrid& grid, const GbOptions& opts, int threads = 1);

struct FieldSlice {
  Route route = Route::exact;
  double x = 0.0;
  double k = 0.0;
  Eigen::VectorXd y;
  Eigen::VectorXcd u;
};

/// n points on [-h sigma, h sigma] + 2 xi0 eta0.
Eigen::VectorXd default_y_grid(const Incidence& inc, const GaussianEnvelope& env,
                               double half_width_sigmas = 8.0, int points = 801);

/// Trapezoid inverse transform of v_hat * A_hat. Throws
/// std::invalid_argument when the eta grid violates the Nyquist spacing
/// pi/(k (y_max - y_min)) or does not reach the spectral floor.
FieldSlice synthesize_field(const SpectralProfile& profile, const Incidence& inc,
                            const Eigen::VectorXd& y, const GaussianEnvelope& env,
                            double floor = 1e-12);

/// sqrt(k/2pi) * integral over z of the beams, z in [-9 sigma, 9 sigma].
QuadratureResult u_gb_physical(const Incidence& inc, double x, double y, double k,
                               const GaussianEnvelope& env, double tol = 1e-9);

/// Split of v_hat - v_hat_gb at x = x_c.
struct ResidualTerms {
  Complex r1;
  Complex r2;
  Complex r3;
  Complex v_exact;
  Complex v_gb;
  QuadratureResult integral;
};

/// Throws std::domain_error unless |eta| <= xi0^2 k^{-2/3} / 4.
ResidualTerms residual_terms(const Incidence& inc, double k, double eta, const GbOptions& opts);

} // namespace caustic
