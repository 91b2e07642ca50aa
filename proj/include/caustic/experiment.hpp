#pragma once

#include <string>
#include <vector>

#include "caustic/checks.hpp"
#include "caustic/field.hpp"

namespace caustic {

/// Input of the k-sweep. The defaults are a representative setup, not a
/// reproduction of a particular figure.
struct WaveConfig {
  double theta = kPi / 3.0;
  double sigma = 1.0;
  std::vector<double> k_list{100.0, 200.0, 400.0, 800.0, 1600.0};
  double y_half_width_sigmas = 8.0;
  int y_points = 801;
  double quad_tol = 1e-10;
  double tail_tol = 1e-10;
  double spectral_floor = 1e-14;
  unsigned seed = 12345;
  int threads = 0;  // 0: hardware concurrency
  std::string out_dir = "out";
  bool run_checks = true;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const WaveConfig& cfg);
int resolved_threads(int requested);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_spread = 0.0;  // max |log e - fit| over the points
};

/// Least squares line through (log k, log e). Needs >= 3 points, e > 0.
RateFit fit_rate(const std::vector<double>& k, const std::vector<double>& e);

struct CausticError {
  double k = 0.0;
  double linf_error = 0.0;
  double max_u_exact = 0.0;
  double relative_error = 0.0;
  double refinement_change = 0.0;  // relative change of linf_error on a 2x y grid
  double spot_check_y = 0.0;
  double spot_check_diff = 0.0;    // spectral vs physical beam route at spot_check_y
  double spectral_error_bound = 0.0;
  int eta_points = 0;
  double runtime_s = 0.0;
};

/// Fields at x = x_c on the configured y grid, kept for plot output.
struct CausticSlices {
  FieldSlice exact;
  FieldSlice beam;
};

/// max over the y grid of |u_GB(x_c, y) - u(x_c, y)|. Throws std::runtime_error
/// when a 2x refinement of the y grid moves the maximum by 1% or more.
CausticError linf_error_at_caustic(const WaveConfig& cfg, double k, const GbOptions& opts,
                                   int threads = 1, CausticSlices* slices = nullptr);

struct ConvergenceReport {
  WaveConfig config;
  std::vector<CausticError> records;
  RateFit rate;
  RateFit relative_rate;
  double amplitude_spread = 0.0;  // max/min of max|u| k^{-1/6}
  std::vector<LemmaCheck> lemma_checks;
  bool rate_ok = false;
  bool relative_rate_ok = false;
  bool amplitude_ok = false;
  bool monotone_ok = false;  // error decreasing along k_list up to a 10% wiggle
  bool checks_ok = false;
  bool passed = false;
  std::string failure;  // set when the sweep aborted
};

/// Runs the sweep (k values in parallel) and, if cfg.run_checks, the property
/// suite. Solver failures are recorded in report.failure instead of thrown.
ConvergenceReport run_experiment(const WaveConfig& cfg,
                                 std::vector<CausticSlices>* slices = nullptr);
void evaluate_acceptance(ConvergenceReport& report);

// io.cpp
/// Shortest round-trip decimal form.
std::string format_double(double v);
WaveConfig config_from_json_text(const std::string& text);
WaveConfig load_config(const std::string& path);
std::string config_to_json_text(const WaveConfig& cfg);
std::string report_to_json_text(const ConvergenceReport& r);
ConvergenceReport report_from_json_text(const std::string& text);
std::string convergence_csv(const ConvergenceReport& r);
std::string field_csv(const FieldSlice& s);
/// report.json, convergence.csv, error_vs_k.dat and one slice_k<k>.dat per k.
void write_outputs(const ConvergenceReport& r, const std::vector<CausticSlices>& slices,
                   const std::string& dir);

} // namespace caustic
