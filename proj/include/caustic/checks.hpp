#pragma once

#include <string>
#include <vector>

#include "caustic/field.hpp"

namespace caustic {

/// Sup of |quantity| / shape within each group of equal scale value; the
/// constant is the largest group sup, the spread is log10(max/min) over
/// groups and the slope is a least-squares fit of log sup vs log scale.
struct EnvelopeFit {
  double constant = 0.0;
  double floor = 0.0;  // smallest group sup
  double spread_decades = 0.0;
  double slope = 0.0;
  std::size_t samples = 0;
  std::size_t groups = 0;
  bool passed = false;
};

EnvelopeFit fit_envelope(const std::vector<double>& scale, const std::vector<double>& ratio,
                         double max_spread_decades = 1.0);

struct LemmaCheck {
  std::string name;
  bool passed = false;
  double fitted_constant = 0.0;
  std::string detail;
};

struct CheckSettings {
  double theta = kPi / 3.0;
  double sigma = 1.0;
  double quad_tol = 1e-10;
  unsigned seed = 12345;
  int threads = 1;
  bool extended = true;  // route equivalence at k = 100 and the doubling test
};

/// (eta, k) samples of the doubling test.
std::vector<std::pair<double, double>> regularization_samples();

/// Sampled checks of the analytic bounds used by the error estimate.
std::vector<LemmaCheck> run_lemma_checks(const CheckSettings& settings);

// Individual groups, shared with the acceptance suite.
LemmaCheck check_q_sandwich(const Incidence& inc);
LemmaCheck check_im_phi_nonnegative(const Incidence& inc);
LemmaCheck check_z_bound();
LemmaCheck check_gradient_radius(const Incidence& inc, double c0);
LemmaCheck check_derivative_envelope(const Incidence& inc);
LemmaCheck check_airy_bounds();
LemmaCheck check_exact_envelope(const Incidence& inc);
LemmaCheck check_gb_envelope(const Incidence& inc, const GbOptions& opts, int threads);
std::vector<LemmaCheck> check_residual_envelopes(const Incidence& inc, const GbOptions& opts,
                                                 int threads);
LemmaCheck check_phi0_bound();
LemmaCheck check_transmission(const Incidence& inc);

/// Closed-form identities that hold to rounding.
LemmaCheck check_identities(const Incidence& inc, const GbOptions& opts);
/// |v'' + k^2 (1 - x - (eta0 + eta)^2) v| / (|v''| + |k^2 (...) v|), centred differences.
double ode_relative_residual(const Incidence& inc, double x, double k, double eta, double h);
/// Max of the above over 40 random samples, step 1e-4/k.
LemmaCheck check_ode_residual(const Incidence& inc, unsigned seed);
/// Spectral synthesis of the beam route against direct z superposition.
LemmaCheck check_route_equivalence(const Incidence& inc, const GaussianEnvelope& env,
                                   const GbOptions& opts, double k, unsigned seed, int threads);
/// k^{1/3} int psi theta^p e^{ik phi_a} vs 2 pi i^p k^{-p/3} Ai^{(p)}(rho).
LemmaCheck check_airy_bridge(const Incidence& inc, double k, const std::vector<double>& rhos,
                             double c0, double tol);
/// Integration by parts identity on a window without stationary points.
LemmaCheck check_nonstationary(int n, double k);
/// Successive doublings of T in the beam theta integral.
LemmaCheck check_regularization(const Incidence& inc, const GbOptions& opts,
                                const std::vector<std::pair<double, double>>& eta_k,
                                int threads = 1);

} // namespace caustic
