#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "caustic/experiment.hpp"
#include "caustic/parallel.hpp"

using namespace caustic;

namespace {

void print_checks(const std::vector<LemmaCheck>& checks) {
  for (const LemmaCheck& c : checks)
    std::printf("  [%s] %-30s %s\n", c.passed ? "pass" : "FAIL", c.name.c_str(), c.detail.c_str());
}

int cmd_run(const std::string& config, int threads, const std::string& out) {
  WaveConfig cfg = config.empty() ? WaveConfig{} : load_config(config);
  if (threads >= 0) cfg.threads = threads;
  if (!out.empty()) cfg.out_dir = out;
  validate(cfg);
  std::vector<CausticSlices> slices;
  const ConvergenceReport r = run_experiment(cfg, &slices);
  write_outputs(r, slices, cfg.out_dir);

  std::printf("%10s %14s %14s %14s %9s\n", "k", "linf_error", "max|u|", "relative", "time[s]");
  for (const CausticError& e : r.records)
    std::printf("%10g %14.6e %14.6e %14.6e %9.2f\n", e.k, e.linf_error, e.max_u_exact, e.relative_error,
                e.runtime_s);
  if (!r.failure.empty()) std::printf("sweep failed: %s\n", r.failure.c_str());
  std::printf("fitted rate %.4f (spread %.3g), relative rate %.4f, amplitude spread %.3f\n",
              r.rate.slope, r.rate.residual_spread, r.relative_rate.slope, r.amplitude_spread);
  print_checks(r.lemma_checks);
  std::printf("rate %s, relative rate %s, amplitude %s, checks %s\n", r.rate_ok ? "ok" : "FAIL",
              r.relative_rate_ok ? "ok" : "FAIL", r.amplitude_ok ? "ok" : "FAIL",
              r.checks_ok ? "ok" : "FAIL");
  if (!r.monotone_ok) std::printf("note: error is not monotone in k\n");
  std::printf("report written to %s\n", cfg.out_dir.c_str());
  return r.passed ? 0 : 1;
}

int cmd_check(const std::string& config, int threads, const std::string& out) {
  const WaveConfig cfg = config.empty() ? WaveConfig{} : load_config(config);
  CheckSettings s;
  s.theta = cfg.theta;
  s.sigma = cfg.sigma;
  s.quad_tol = cfg.quad_tol;
  s.seed = cfg.seed;
  s.threads = resolved_threads(threads >= 0 ? threads : cfg.threads);
  ConvergenceReport r;
  r.config = cfg;
  r.lemma_checks = run_lemma_checks(s);
  print_checks(r.lemma_checks);
  evaluate_acceptance(r);
  if (!out.empty()) write_outputs(r, {}, out);
  return r.checks_ok ? 0 : 1;
}

int cmd_field(const std::string& config, double k, double x, const std::string& route, int threads,
              const std::string& out) {
  const WaveConfig cfg = config.empty() ? WaveConfig{} : load_config(config);
  const Incidence inc = make_incidence(cfg.theta);
  const GaussianEnvelope env{cfg.sigma};
  if (!(x >= 0.0 && x <= inc.x_c)) throw std::invalid_argument("field: x must lie in [0, x_c]");
  const Eigen::VectorXd y = default_y_grid(inc, env, cfg.y_half_width_sigmas, cfg.y_points);
  FieldSlice slice;
  if (route == "physical") {
    slice.route = Route::gaussian_beam;
    slice.x = x;
    slice.k = k;
    slice.y = y;
    slice.u.resize(y.size());
    parallel_for(std::size_t(y.size()), resolved_threads(threads), [&](std::size_t i) {
      slice.u[i] = u_gb_physical(inc, x, y[i], k, env, cfg.quad_tol).value;
    });
  } else {
    const Route r = route == "exact" ? Route::exact : Route::gaussian_beam;
    GbOptions opts;
    if (r == Route::gaussian_beam) {
      opts = make_gb_options(inc, cfg.quad_tol);
      opts.tail_tol = cfg.tail_tol;
    }
    const EtaGrid grid = make_eta_grid(k, env, y[y.size() - 1] - y[0], cfg.spectral_floor);
    slice = synthesize_field(spectral_profile(r, inc, x, k, grid, opts, resolved_threads(threads)), inc,
                             y, env, cfg.spectral_floor);
  }
  const std::string csv = field_csv(slice);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / "field.csv") << csv;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian beam vs exact field at a fold caustic"};
  app.require_subcommand(1);
  int threads = -1;
  std::string out;
  app.add_option("--threads", threads, "worker threads (0: all cores)");
  app.add_option("--out", out, "output directory");

  std::string config;
  auto* run = app.add_subcommand("run", "k-sweep convergence experiment");
  run->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
  auto* check = app.add_subcommand("check", "property checks only");
  check->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
  auto* field = app.add_subcommand("field", "one field slice as CSV (y, re, im)");
  double k = 100.0, x = 0.0;
  std::string route = "exact";
  field->add_option("--k", k, "wavenumber")->required()->check(CLI::Range(1.0, 1e7));
  field->add_option("--x", x, "abscissa in [0, x_c]")->required();
  field->add_option("--route", route, "exact | gb | physical")
      ->check(CLI::IsMember({"exact", "gb", "physical"}));
  field->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
  for (auto* sub : {run, check, field}) {
    sub->add_option("--threads", threads, "worker threads (0: all cores)");
    sub->add_option("--out", out, "output directory");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, threads, out);
    if (*check) return cmd_check(config, threads, out);
    return cmd_field(config, k, x, route, threads, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
