#include "caustic/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "caustic/airy.hpp"
#include "caustic/parallel.hpp"

namespace caustic {

const char* to_string(Route r) {
  return r == Route::exact ? "exact" : "gaussian_beam";
}

GbOptions make_gb_options(const Incidence& inc, double tol) {
  GbOptions opts;
  opts.tol = tol;
  opts.c0 = calibrate_gradient_radius(inc).c0;
  double qmin = std::numeric_limits<double>::infinity();
  for (int i = -20000; i <= 20000; ++i) qmin = std::min(qmin, std::abs(q_poly(i * 1e-3, inc)));
  opts.amp_bound = std::sqrt(std::abs(q_poly(inc.xi0, inc)) / qmin) / (2.0 * kPi);
  return opts;
}

Complex v_hat_exact(const Incidence& inc, double x, double k, double eta) {
  const double big_x = 1.0 - (inc.eta0 + eta) * (inc.eta0 + eta);
  const double kk = std::pow(k, 2.0 / 3.0);
  return std::conj(kAlpha) * ai_ratio(kk * (x - big_x), kAlpha * kk * big_x);
}

Complex exact_prefactor(const Incidence& inc, double k, double eta) {
  const double big_x = 1.0 - (inc.eta0 + eta) * (inc.eta0 + eta);
  const ScaledAiry d = airy_scaled(kAlpha * std::pow(k, 2.0 / 3.0) * big_x);
  return std::conj(kAlpha) * std::pow(k, -1.0 / 6.0) / d.ai * std::exp(-d.log_scale);
}

Complex gb_prefactor(const Incidence& inc, double k, double eta) {
  const double x0 = inc.xi0;
  const double phase = k * (2.0 / 3.0 * x0 * x0 * x0 - 2.0 * eta * inc.eta0 * x0);
  return 2.0 * std::sqrt(kPi * x0) * std::polar(1.0, -kPi / 4.0) * std::polar(1.0, phase);
}

OscillatoryIntegrand gb_integrand(const PhaseContext& ctx) {
  OscillatoryIntegrand f;
  const Complex top = sqrt_branch_safe(q_poly(ctx.inc.xi0, ctx.inc), ctx.inc) / (2.0 * kPi);
  f.phase = [ctx](double t) { return phi_g(ctx, t); };
  f.phase_slope = [ctx](double t) { return phi_derivative(ctx, t, 1, PhaseKind::beam); };
  f.amplitude = [ctx, top](double t) {
    return top / sqrt_branch_safe(q_poly(ctx.inc.xi0 + t, ctx.inc), ctx.inc);
  };
  return f;
}

GbSpectral v_hat_gb(const Incidence& inc, double x, double k, double eta, const GbOptions& opts) {
  if (!(opts.c0 > 0.0) || !(opts.amp_bound > 0.0))
    throw std::invalid_argument("v_hat_gb: options not calibrated, use make_gb_options");
  const PhaseContext ctx = make_phase_context(inc, inc.x_c - x, eta);
  GbSpectral out;
  const double tail_tol = opts.tail_tol > 0.0 ? opts.tail_tol : opts.tol;
  out.plan = plan_truncation(ctx, PhaseKind::beam, k, tail_tol, opts.c0, opts.amp_bound,
                             opts.use_damping_window);
  RegularizedOptions ro;
  ro.cutoff = opts.cutoff;
  ro.window = out.plan.window;
  ro.tail_estimate = out.plan.tail_estimate();
  out.integral = oscillatory_integral(gb_integrand(ctx), k, out.plan.radius, opts.tol, ro);
  out.value = std::pow(k, 1.0 / 6.0) * gb_prefactor(inc, k, eta) * out.integral.value;
  return out;
}

TransmissionCoefficient transmission_coeff(const Incidence& inc, double k, double eta) {
  const double full = inc.eta0 + eta;
  const double zeta0 = std::pow(k, 2.0 / 3.0) * (full * full - 1.0);
  const Complex plus = -kAlpha * zeta0;
  const Complex minus = -std::conj(kAlpha) * zeta0;
  return {-kAlpha * ai_ratio(minus, plus), std::conj(kAlpha) * ai_ratio(zeta0, plus)};
}

EtaGrid make_eta_grid(double k, const GaussianEnvelope& env, double y_window, double floor) {
  if (!(y_window > 0.0)) throw std::invalid_argument("make_eta_grid: y_window must be positive");
  EtaGrid g;
  g.half_width = env.spectral_half_width(k, floor);
  g.spacing = kPi / (k * y_window);
  const int n = int(std::ceil(g.half_width / g.spacing));
  g.eta = Eigen::VectorXd::LinSpaced(2 * n + 1, -n * g.spacing, n * g.spacing);
  return g;
}

SpectralProfile spectral_profile(Route route, const Incidence& inc, double x, double k,
                                 const EtaGrid& grid, const GbOptions& opts, int threads) {
  SpectralProfile p;
  p.route = route;
  p.x = x;
  p.k = k;
  p.eta = grid.eta;
  p.values.resize(grid.eta.size());
  p.errors = Eigen::VectorXd::Zero(grid.eta.size());
  parallel_for(std::size_t(grid.eta.size()), threads, [&](std::size_t i) {
    if (route == Route::exact) {
      p.values[i] = v_hat_exact(inc, x, k, grid.eta[i]);
    } else {
      const GbSpectral v = v_hat_gb(inc, x, k, grid.eta[i], opts);
      p.values[i] = v.value;
      p.errors[i] = std::abs(v.value / v.integral.value) * v.integral.est_error;
    }
  });
  return p;
}

Eigen::VectorXd default_y_grid(const Incidence& inc, const GaussianEnvelope& env,
                               double half_width_sigmas, int points) {
  if (points < 2) throw std::invalid_argument("default_y_grid: need at least two points");
  const double c = 2.0 * inc.xi0 * inc.eta0;
  const double h = half_width_sigmas * env.sigma;
  return Eigen::VectorXd::LinSpaced(points, c - h, c + h);
}

FieldSlice synthesize_field(const SpectralProfile& profile, const Incidence& inc,
                            const Eigen::VectorXd& y, const GaussianEnvelope& env, double floor) {
  const Eigen::Index n = profile.eta.size();
  if (n < 3) throw std::invalid_argument("synthesize_field: eta grid too small");
  if (y.size() == 0) throw std::invalid_argument("synthesize_field: empty y grid");
  const double k = profile.k;
  const double h = (profile.eta[n - 1] - profile.eta[0]) / double(n - 1);
  const double width = y.maxCoeff() - y.minCoeff();
  if (width > 0.0 && h > kPi / (k * width) * (1.0 + 1e-9))
    throw std::invalid_argument("synthesize_field: eta spacing " + std::to_string(h) +
                                " exceeds the Nyquist bound pi/(k (y_max - y_min)) = " +
                                std::to_string(kPi / (k * width)));
  const double edge = std::max(std::abs(profile.eta[0]), std::abs(profile.eta[n - 1]));
  if (env.spectrum(edge, k) > floor * env.spectrum(0.0, k))
    throw std::invalid_argument("synthesize_field: eta grid does not reach the spectral floor");

  Eigen::VectorXcd weights(n);
  for (Eigen::Index j = 0; j < n; ++j)
    weights[j] = profile.values[j] * env.spectrum(profile.eta[j], k) *
                 ((j == 0 || j == n - 1) ? 0.5 * h : h);
  Eigen::MatrixXcd kernel(y.size(), n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < y.size(); ++i)
      kernel(i, j) = std::polar(1.0, k * y[i] * profile.eta[j]);

  FieldSlice out;
  out.route = profile.route;
  out.x = profile.x;
  out.k = k;
  out.y = y;
  out.u = kernel * weights;
  const double norm = std::sqrt(k / (2.0 * kPi));
  for (Eigen::Index i = 0; i < y.size(); ++i)
    out.u[i] *= norm * std::polar(1.0, k * inc.eta0 * y[i]);
  return out;
}

QuadratureResult u_gb_physical(const Incidence& inc, double x, double y, double k,
                               const GaussianEnvelope& env, double tol) {
  OscillatoryIntegrand f;
  f.phase = [&](double z) { return beam_phase(x, y, z, inc); };
  f.amplitude = [&](double z) { return beam_amplitude(y, z, inc, env); };
  const double norm = std::sqrt(k / (2.0 * kPi));
  const double reach = 9.0 * env.sigma;
  PanelOptions po;
  po.max_panel = 0.25 * env.sigma;
  QuadratureResult r = integrate_oscillatory(f, k, -reach, reach, tol / norm, po);
  r.value *= norm;
  r.est_error *= norm;
  r.window = reach;
  return r;
}

ResidualTerms residual_terms(const Incidence& inc, double k, double eta, const GbOptions& opts) {
  const double limit = inc.xi0 * inc.xi0 * std::pow(k, -2.0 / 3.0) / 4.0;
  if (!(std::abs(eta) <= limit))
    throw std::domain_error("residual_terms: |eta| = " + std::to_string(std::abs(eta)) +
                            " exceeds xi0^2 k^{-2/3}/4 = " + std::to_string(limit));
  const double x = inc.x_c;
  const double big_x = 1.0 - (inc.eta0 + eta) * (inc.eta0 + eta);
  const double kk = std::pow(k, 2.0 / 3.0);
  const double k6 = std::pow(k, 1.0 / 6.0);
  const Complex a1 = ai(kk * (x - big_x));
  const Complex a2 = ai(kk * (x - big_x - eta * eta));
  const Complex p = exact_prefactor(inc, k, eta);
  const Complex pgb = gb_prefactor(inc, k, eta);
  const GbSpectral gb = v_hat_gb(inc, x, k, eta, opts);

  ResidualTerms out;
  out.integral = gb.integral;
  out.r1 = k6 * pgb * (a1 - a2);
  out.r2 = k6 * (p - pgb) * a1;
  out.r3 = k6 * pgb * (a2 - gb.integral.value);
  out.v_exact = k6 * p * a1;
  out.v_gb = gb.value;
  return out;
}

} // namespace caustic
