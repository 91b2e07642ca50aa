#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "caustic/phase.hpp"

namespace caustic {

using ComplexOfReal = std::function<Complex(double)>;
using RealOfReal = std::function<double(double)>;

/// integrand amplitude(t) * exp(i k phase(t)); phase_slope is optional and
/// only steers the panel layout.
struct OscillatoryIntegrand {
  ComplexOfReal phase;
  ComplexOfReal amplitude;
  ComplexOfReal phase_slope;
};

struct PanelOptions {
  double periods_per_panel = 0.5;
  double max_panel = 0.5;
  int max_depth = 30;
  std::size_t max_evals = 400'000'000;
};

struct QuadratureResult {
  Complex value;
  double est_error = 0.0;
  std::size_t n_evals = 0;
  std::size_t n_panels = 0;
  double truncation_radius = 0.0;
  double window = 0.0;
};

class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

struct GaussKronrodEstimate {
  Complex kronrod;
  Complex gauss;
  double error = 0.0;
  double roundoff_floor = 0.0;  // 50 eps * int |f|, the error cannot go below this
};

/// 7-point Gauss / 15-point Kronrod pair on [a, b].
GaussKronrodEstimate gauss_kronrod15(const ComplexOfReal& f, double a, double b);

/// Panels no longer than periods_per_panel local periods 2pi/(k|phi'|),
/// each bisected until its share of tol is met. Throws QuadratureFailure
/// with the partial sum when a panel cannot be resolved.
QuadratureResult integrate_oscillatory(const OscillatoryIntegrand& f, double k, double lo,
                                       double hi, double tol, const PanelOptions& opts = {});

/// 1 on |x| <= 1, 0 on |x| >= 2, exp(-1/t) blend in between.
double cutoff_psi(double x);
/// C^3 polynomial smoothstep with the same support as cutoff_psi.
double cutoff_smoothstep(double x);

struct RegularizedOptions {
  RealOfReal cutoff = cutoff_psi;
  double window = 0.0;        // integrate over [-window, window]; 0 means 2T
  double tail_estimate = 0.0; // added to est_error
  PanelOptions panels;
};

/// k^{1/3} * integral cutoff(t/T) amplitude(t) exp(i k phase(t)) dt.
/// tol is absolute on the returned value.
QuadratureResult oscillatory_integral(const OscillatoryIntegrand& f, double k, double T,
                                      double tol, const RegularizedOptions& opts = {});

/// How far to integrate for one of the two phases.
struct TruncationPlan {
  double floor = 0.0;          // 2 c0 (1 + |eta|^{1/2})
  double radius = 0.0;         // T
  double window = 0.0;         // <= 2T; the rest is below tol by damping
  double amp_bound = 0.0;
  double nonstat_bound = 0.0;  // heuristic regularization tail at T
  double damping_bound = 0.0;  // exp(-k inf_{|t|>=T} Im phi)
  double window_bound = 0.0;   // bound on the part of [-2T, 2T] skipped
  double tail_estimate() const { return nonstat_bound + window_bound; }
};

/// Heuristic size of the regularization tail at radius T, assuming
/// |phi'| >= t^2/16 there: optimally truncated integration by parts gains
/// about 16 n/(k T^3) per step, giving exp(-k T^3/(16 e)).
double nonstat_tail_bound(double k, double T, double amp_bound);

TruncationPlan plan_truncation(const PhaseContext& ctx, PhaseKind kind, double k, double tol,
                               double c0, double amp_bound, bool use_damping_window = true);

double select_truncation_radius(const PhaseContext& ctx, PhaseKind kind, double k, double tol,
                                double c0);

struct RegularizedLimit {
  QuadratureResult result;
  std::vector<double> radii;
  std::vector<Complex> history;
  bool converged = false;
};

/// Doubles T from T0 until successive values differ by less than tol,
/// at most max_doublings times. The window always follows 2T.
RegularizedLimit regularized_limit(const OscillatoryIntegrand& f, double k, double T0, double tol,
                                   int max_doublings = 10, const RegularizedOptions& opts = {});

// Truncated Taylor arithmetic: entry j holds f^{(j)}(t0) / j!.
using Jet = Eigen::VectorXcd;

Jet jet_variable(double t0, int order);
Jet jet_constant(Complex c, int order);
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_div(const Jet& a, const Jet& b);
Jet jet_exp(const Jet& a);
Jet jet_derivative(const Jet& a);

using JetFunction = std::function<Jet(const Jet&)>;

/// L^n[a](t) with L[a] = (a / phi')'.
Complex ibp_amplitude(const JetFunction& amp, const JetFunction& phase, double t, int n);

struct NonstationaryCheck {
  Complex direct;       // integral a e^{ik phi}
  Complex transformed;  // (ik)^{-n} integral L^n[a] e^{ik phi}
  double residual = 0.0;
  double quad_error = 0.0;
};

/// Throws std::domain_error if phi' vanishes on [a, b].
NonstationaryCheck nonstat_phase_check(const JetFunction& amp, const JetFunction& phase, double k,
                                       double a, double b, int n, double tol);

} // namespace caustic
