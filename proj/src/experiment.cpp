#include "caustic/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "caustic/parallel.hpp"

namespace caustic {

void validate(const WaveConfig& cfg) {
  (void)make_incidence(cfg.theta);
  if (!(cfg.sigma > 0.0)) throw std::invalid_argument("config: sigma must be positive");
  if (cfg.k_list.size() < 3) throw std::invalid_argument("config: k_list needs at least 3 entries");
  for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
    if (!(cfg.k_list[i] >= 1.0)) throw std::invalid_argument("config: k_list entries must be >= 1");
    if (i > 0 && !(cfg.k_list[i] > cfg.k_list[i - 1]))
      throw std::invalid_argument("config: k_list must be strictly increasing");
  }
  if (!(cfg.y_half_width_sigmas > 0.0))
    throw std::invalid_argument("config: y_half_width_sigmas must be positive");
  if (cfg.y_points < 3) throw std::invalid_argument("config: y_points must be >= 3");
  if (!(cfg.quad_tol > 0.0) || !(cfg.tail_tol > 0.0))
    throw std::invalid_argument("config: tolerances must be positive");
  if (!(cfg.spectral_floor > 0.0 && cfg.spectral_floor < 1.0))
    throw std::invalid_argument("config: spectral_floor must lie in (0, 1)");
  if (cfg.threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

int resolved_threads(int requested) {
  if (requested > 0) return requested;
  return int(std::max(1u, std::thread::hardware_concurrency()));
}

RateFit fit_rate(const std::vector<double>& k, const std::vector<double>& e) {
  if (k.size() != e.size()) throw std::invalid_argument("fit_rate: size mismatch");
  if (k.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 points");
  const Eigen::Index n = Eigen::Index(k.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(k[i] > 0.0) || !(e[i] > 0.0) || !std::isfinite(e[i]))
      throw std::invalid_argument("fit_rate: k and e must be positive and finite");
    a(i, 0) = 1.0;
    a(i, 1) = std::log(k[i]);
    b[i] = std::log(e[i]);
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  RateFit f;
  f.intercept = c[0];
  f.slope = c[1];
  f.residual_spread = (a * c - b).cwiseAbs().maxCoeff();
  return f;
}

CausticError linf_error_at_caustic(const WaveConfig& cfg, double k, const GbOptions& opts,
                                   int threads, CausticSlices* slices) {
  const auto start = std::chrono::steady_clock::now();
  const Incidence inc = make_incidence(cfg.theta);
  const GaussianEnvelope env{cfg.sigma};
  const double x = inc.x_c;
  const Eigen::VectorXd y = default_y_grid(inc, env, cfg.y_half_width_sigmas, cfg.y_points);
  const double window = y[y.size() - 1] - y[0];
  const EtaGrid grid = make_eta_grid(k, env, window, cfg.spectral_floor);

  const SpectralProfile ex = spectral_profile(Route::exact, inc, x, k, grid, opts, threads);
  const SpectralProfile gb = spectral_profile(Route::gaussian_beam, inc, x, k, grid, opts, threads);

  auto linf = [&](const Eigen::VectorXd& ys, FieldSlice* ue, FieldSlice* ug) {
    FieldSlice a = synthesize_field(ex, inc, ys, env, cfg.spectral_floor);
    FieldSlice b = synthesize_field(gb, inc, ys, env, cfg.spectral_floor);
    const double m = (a.u - b.u).cwiseAbs().maxCoeff();
    if (ue) *ue = std::move(a);
    if (ug) *ug = std::move(b);
    return m;
  };
  CausticError out;
  out.k = k;
  out.eta_points = int(grid.eta.size());
  FieldSlice ue, ug;
  out.linf_error = linf(y, &ue, &ug);
  out.max_u_exact = ue.u.cwiseAbs().maxCoeff();
  out.relative_error = out.linf_error / out.max_u_exact;

  const Eigen::VectorXd fine = Eigen::VectorXd::LinSpaced(2 * y.size() - 1, y[0], y[y.size() - 1]);
  const double refined = linf(fine, nullptr, nullptr);
  out.refinement_change = std::abs(refined - out.linf_error) / out.linf_error;
  if (!(out.refinement_change < 0.01))
    throw std::runtime_error("linf_error_at_caustic: y grid under-resolved at k = " +
                             std::to_string(k) + " (2x refinement moves the max by " +
                             std::to_string(100.0 * out.refinement_change) + "%)");

  // quadrature error carried through the synthesis sum
  const double norm = std::sqrt(k / (2.0 * kPi));
  for (Eigen::Index j = 0; j < grid.eta.size(); ++j)
    out.spectral_error_bound += norm * grid.spacing * gb.errors[j] * env.spectrum(grid.eta[j], k);

  Eigen::Index peak = 0;
  ug.u.cwiseAbs().maxCoeff(&peak);
  out.spot_check_y = y[peak];
  out.spot_check_diff = std::abs(u_gb_physical(inc, x, y[peak], k, env, 1e-9).value - ug.u[peak]);

  if (slices) *slices = {std::move(ue), std::move(ug)};
  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void evaluate_acceptance(ConvergenceReport& r) {
  const bool complete = r.failure.empty() && r.records.size() == r.config.k_list.size();
  r.rate_ok = complete && r.rate.slope >= -1.0 && r.rate.slope <= -0.68;
  r.relative_rate_ok = complete && r.relative_rate.slope >= -1.15 && r.relative_rate.slope <= -0.85;
  r.amplitude_ok = complete && r.amplitude_spread <= 2.0;
  r.monotone_ok = complete;
  for (std::size_t i = 1; i < r.records.size(); ++i)
    if (r.records[i].linf_error > 1.1 * r.records[i - 1].linf_error) r.monotone_ok = false;
  r.checks_ok = std::all_of(r.lemma_checks.begin(), r.lemma_checks.end(),
                            [](const LemmaCheck& c) { return c.passed; });
  r.passed = complete && r.rate_ok && r.relative_rate_ok && r.amplitude_ok && r.checks_ok;
}

ConvergenceReport run_experiment(const WaveConfig& cfg, std::vector<CausticSlices>* slices) {
  validate(cfg);
  ConvergenceReport r;
  r.config = cfg;
  const int threads = resolved_threads(cfg.threads);
  const Incidence inc = make_incidence(cfg.theta);
  try {
    GbOptions opts = make_gb_options(inc, cfg.quad_tol);
    opts.tail_tol = cfg.tail_tol;
    const std::size_t n = cfg.k_list.size();
    std::vector<CausticError> recs(n);
    std::vector<CausticSlices> sl(n);
    const int outer = std::min<int>(threads, int(n));
    const int inner = std::max(1, threads / outer);
    parallel_for(n, outer, [&](std::size_t i) {
      recs[i] = linf_error_at_caustic(cfg, cfg.k_list[i], opts, inner, slices ? &sl[i] : nullptr);
    });
    r.records = std::move(recs);
    if (slices) *slices = std::move(sl);

    std::vector<double> ks, err, rel, amp;
    for (const CausticError& c : r.records) {
      ks.push_back(c.k);
      err.push_back(c.linf_error);
      rel.push_back(c.relative_error);
      amp.push_back(c.max_u_exact * std::pow(c.k, -1.0 / 6.0));
    }
    r.rate = fit_rate(ks, err);
    r.relative_rate = fit_rate(ks, rel);
    r.amplitude_spread = *std::max_element(amp.begin(), amp.end()) / *std::min_element(amp.begin(), amp.end());
  } catch (const std::exception& e) {
    r.failure = e.what();
  }
  if (cfg.run_checks) {
    CheckSettings s;
    s.theta = cfg.theta;
    s.sigma = cfg.sigma;
    s.quad_tol = cfg.quad_tol;
    s.seed = cfg.seed;
    s.threads = threads;
    r.lemma_checks = run_lemma_checks(s);
  }
  evaluate_acceptance(r);
  return r;
}

} // namespace caustic
