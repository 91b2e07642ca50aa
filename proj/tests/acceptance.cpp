// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "caustic/experiment.hpp"

using namespace caustic;

namespace {

struct Line {
  int id;
  std::string what;
  bool passed;
  std::string detail;
};

std::string join(const std::vector<LemmaCheck>& cs) {
  std::string s;
  for (const LemmaCheck& c : cs) {
    if (!s.empty()) s += "; ";
    s += c.name + (c.passed ? " ok" : " FAILED") + " (" + c.detail + ")";
  }
  return s;
}

bool all_passed(const std::vector<LemmaCheck>& cs) {
  for (const LemmaCheck& c : cs)
    if (!c.passed) return false;
  return true;
}

} // namespace

int main() {
  const WaveConfig cfg = [] {
    WaveConfig c;
    c.run_checks = false;
    return c;
  }();
  const Incidence inc = make_incidence(cfg.theta);
  const GaussianEnvelope env{cfg.sigma};
  const GbOptions opts = make_gb_options(inc, cfg.quad_tol);
  const int threads = resolved_threads(0);
  std::vector<Line> lines;
  auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  ConvergenceReport sweep;
  const double t_sweep = timed([&] { sweep = run_experiment(cfg); });
  {
    char buf[256];
    std::snprintf(buf, sizeof buf, "slope %.4f in [-1, -0.68], relative slope %.4f in [-1.15, -0.85], %.1f s%s%s",
                  sweep.rate.slope, sweep.relative_rate.slope, t_sweep, sweep.failure.empty() ? "" : ", ",
                  sweep.failure.c_str());
    lines.push_back({1, "convergence rate at x_c", sweep.rate_ok && sweep.relative_rate_ok, buf});
    std::snprintf(buf, sizeof buf, "max|u| k^{-1/6} varies by a factor %.4f (limit 2)", sweep.amplitude_spread);
    lines.push_back({2, "caustic amplitude growth", sweep.amplitude_ok, buf});
  }

  LemmaCheck route;
  const double t_route = timed([&] { route = check_route_equivalence(inc, env, opts, 100.0, cfg.seed, threads); });
  lines.push_back({3, "spectral vs physical beam route", route.passed,
                   route.detail + ", " + std::to_string(int(t_route)) + " s"});

  const LemmaCheck ode = check_ode_residual(inc, cfg.seed);
  lines.push_back({4, "exact spectrum ODE residual", ode.passed, ode.detail});

  const LemmaCheck ident = check_identities(inc, opts);
  lines.push_back({5, "closed-form identities", ident.passed && ident.fitted_constant <= 1e-12, ident.detail});

  const LemmaCheck bridge = check_airy_bridge(inc, 100.0, {-0.5, 0.0, 0.5}, opts.c0, 1e-6);
  lines.push_back({6, "oscillatory integral vs Airy", bridge.passed, bridge.detail});

  std::vector<LemmaCheck> env_suite{check_q_sandwich(inc), check_exact_envelope(inc),
                                    check_gb_envelope(inc, opts, threads), check_im_phi_nonnegative(inc),
                                    check_z_bound()};
  for (LemmaCheck& c : check_residual_envelopes(inc, opts, threads)) env_suite.push_back(c);
  lines.push_back({7, "bound envelopes", all_passed(env_suite), join(env_suite)});

  const std::vector<LemmaCheck> ns{check_nonstationary(1, 50.0), check_nonstationary(2, 50.0)};
  bool ns_ok = all_passed(ns);
  for (const LemmaCheck& c : ns) ns_ok = ns_ok && c.fitted_constant < 1e-8;
  lines.push_back({8, "integration by parts identity", ns_ok, join(ns)});

  LemmaCheck reg;
  const double t_reg = timed([&] { reg = check_regularization(inc, opts, regularization_samples(), threads); });
  lines.push_back({9, "regularization doublings", reg.passed,
                   reg.detail + ", " + std::to_string(int(t_reg)) + " s"});

  int failed = 0;
  for (const Line& l : lines) {
    std::printf("criterion %d %-36s %s  %s\n", l.id, l.what.c_str(), l.passed ? "PASS" : "FAIL", l.detail.c_str());
    failed += !l.passed;
  }
  std::printf("%d of %zu criteria passed\n", int(lines.size()) - failed, lines.size());
  return failed ? 1 : 0;
}
