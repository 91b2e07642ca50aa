#include "doctest.h"

#include <cmath>

#include "caustic/airy.hpp"
#include "caustic/field.hpp"
#include "caustic/oscillatory.hpp"

using namespace caustic;

namespace {
const Incidence kInc = make_incidence(kPi / 3);
const double kC0 = calibrate_gradient_radius(kInc).c0;

OscillatoryIntegrand airy_moment(const PhaseContext& ctx, int p) {
  OscillatoryIntegrand f;
  f.phase = [ctx](double t) { return Complex(phi_a(ctx, t)); };
  f.phase_slope = [ctx](double t) { return phi_derivative(ctx, t, 1, PhaseKind::airy); };
  f.amplitude = [p](double t) { return Complex(std::pow(t, p)); };
  return f;
}
} // namespace

TEST_CASE("cutoff shapes") {
  for (auto cut : {cutoff_psi, cutoff_smoothstep}) {
    CHECK(cut(0.5) == 1.0);
    CHECK(cut(1.0) == 1.0);
    CHECK(cut(3.0) == 0.0);
    CHECK(cut(2.0) == 0.0);
    CHECK(cut(1.5) == doctest::Approx(0.5).epsilon(1e-15));
    for (double x = 1.1; x < 1.9; x += 0.01) {
      CHECK(cut(x) == cut(-x));
      CHECK(cut(x) > 0.0);
      CHECK(cut(x) < 1.0);
      CHECK(cut(x + 0.005) <= cut(x));
    }
  }
  // flat to all orders at the plateau edge
  CHECK(1.0 - cutoff_psi(1.05) < 1e-8);
}

TEST_CASE("gauss kronrod rule") {
  const GaussKronrodEstimate e = gauss_kronrod15([](double x) { return Complex(std::pow(x, 21), std::pow(x, 13)); }, 0.0, 1.0);
  CHECK(std::abs(e.kronrod - Complex(1.0 / 22.0, 1.0 / 14.0)) < 1e-15);
  CHECK(std::abs(e.gauss.imag() - 1.0 / 14.0) < 1e-15);
  CHECK(std::abs(e.gauss.real() - 1.0 / 22.0) > 1e-8);
}

TEST_CASE("panel integrator on closed forms") {
  OscillatoryIntegrand f;
  f.phase = [](double t) { return Complex(t); };
  f.amplitude = [](double t) { return Complex(std::exp(-t * t)); };
  for (double k : {3.0, 10.0}) {
    const QuadratureResult r = integrate_oscillatory(f, k, -10.0, 10.0, 1e-13);
    CHECK(std::abs(r.value - std::sqrt(kPi) * std::exp(-k * k / 4)) < 1e-12);
    CHECK(r.est_error < 1e-12);
    CHECK(r.n_evals > 0);
  }
  // damped phase: int_0^L e^{ik(t + i t)} dt
  OscillatoryIntegrand g;
  g.phase = [](double t) { return Complex(t, 0.1 * t); };
  g.amplitude = [](double) { return Complex(1.0); };
  const double k = 40.0, L = 3.0;
  const Complex w = kI * k * Complex(1.0, 0.1);
  const QuadratureResult r = integrate_oscillatory(g, k, 0.0, L, 1e-12);
  CHECK(std::abs(r.value - (std::exp(w * L) - 1.0) / w) < 1e-11);
  // panels resolve the oscillation: at least 10 nodes per period
  CHECK(double(r.n_evals) / (k * L / (2 * kPi)) >= 10.0);

  CHECK(integrate_oscillatory(g, k, 1.0, 1.0, 1e-10).value == Complex(0.0));
  CHECK_THROWS_AS(integrate_oscillatory(g, 0.0, 0.0, 1.0, 1e-10), std::invalid_argument);
  CHECK_THROWS_AS(integrate_oscillatory(g, k, 1.0, 0.0, 1e-10), std::invalid_argument);
}

TEST_CASE("failure carries the partial result") {
  OscillatoryIntegrand f;
  f.phase = [](double t) { return Complex(t); };
  f.amplitude = [](double t) { return Complex(1.0 / std::sqrt(std::abs(t - 0.3) + 1e-300)); };
  PanelOptions po;
  po.max_depth = 4;
  try {
    (void)integrate_oscillatory(f, 1.0, 0.0, 1.0, 1e-12, po);
    FAIL("expected QuadratureFailure");
  } catch (const QuadratureFailure& e) {
    CHECK(e.partial().n_evals > 0);
    CHECK(std::isfinite(e.partial().value.real()));
    CHECK(e.partial().est_error > 1e-12);
  }
}

TEST_CASE("regularized airy integrals") {
  const double k = 100.0;
  const double k23 = std::pow(k, 2.0 / 3.0);
  for (double rho : {-0.5, 0.1, 0.5}) {
    const PhaseContext ctx = make_phase_context(kInc, 0.0, rho / (2.0 * kInc.eta0 * k23));
    const double T = select_truncation_radius(ctx, PhaseKind::airy, k, 1e-10, kC0);
    CHECK(T >= 2.0 * kC0);
    for (int p = 0; p <= 2; ++p) {
      const QuadratureResult r = oscillatory_integral(airy_moment(ctx, p), k, T, 1e-10);
      const Complex expect = 2.0 * kPi * std::pow(kI, p) * std::pow(k, -p / 3.0) * ai_derivative(rho, p);
      CAPTURE(rho);
      CAPTURE(p);
      CHECK(std::abs(r.value - expect) <= 1e-6);
      if (p == 0) CHECK(std::abs(r.value / (2 * kPi) - ai(rho)) < 1e-9);
      CHECK(r.truncation_radius == T);
    }
  }
}

TEST_CASE("halving tol does not increase the error") {
  const double k = 100.0, rho = 0.3;
  const PhaseContext ctx = make_phase_context(kInc, 0.0, rho / (2.0 * kInc.eta0 * std::pow(k, 2.0 / 3.0)));
  const Complex expect = 2.0 * kPi * ai(rho);
  const double T = select_truncation_radius(ctx, PhaseKind::airy, k, 1e-12, kC0);
  double prev = INFINITY;
  for (double tol = 1e-3; tol > 1e-11; tol /= 2.0) {
    const double err = std::abs(oscillatory_integral(airy_moment(ctx, 0), k, T, tol).value - expect);
    CAPTURE(tol);
    CHECK(err <= std::max(prev, 1e-13));
    CHECK(err <= tol);
    prev = err;
  }
}

TEST_CASE("truncation plan") {
  const PhaseContext ctx = make_phase_context(kInc, 0.0, 0.0);
  // damping alone cannot reach 1e-10 at k = 100: Im phi_g saturates at
  // eta0^2 / (2 |beta|^2) = 0.1875, so exp(-18.75) ~ 7e-9
  const TruncationPlan p100 = plan_truncation(ctx, PhaseKind::beam, 100.0, 1e-10, kC0, 0.2);
  CHECK(p100.damping_bound > 1e-10);
  CHECK(p100.damping_bound >= p100.amp_bound * std::exp(-100.0 * 0.1875));
  CHECK(p100.nonstat_bound < 1e-10);
  CHECK(p100.window == 2.0 * p100.radius);

  // xi0 = 0.5 at k = 200: damping reaches the tolerance
  const TruncationPlan p200 = plan_truncation(ctx, PhaseKind::beam, 200.0, 1e-10, kC0, 0.2);
  CHECK(p200.damping_bound < 1e-10);
  CHECK(p200.window < 2.0 * p200.radius);

  double last = INFINITY;
  for (double k : {200.0, 400.0, 800.0, 1600.0}) {
    const TruncationPlan p = plan_truncation(ctx, PhaseKind::beam, k, 1e-10, kC0, 0.2);
    CHECK(p.radius >= 2.0 * kC0);
    CHECK(p.window <= last);
    CHECK(p.window_bound < 1e-10);
    last = p.window;
  }
  for (double e : {-3.0, 0.0, 0.5, 9.0}) {
    const PhaseContext c = make_phase_context(kInc, 0.5, e);
    const double T = select_truncation_radius(c, PhaseKind::beam, 1.0, 1e-8, kC0);
    CHECK(T >= 2.0 * kC0 * (1.0 + std::sqrt(std::abs(e))));
  }
  CHECK_THROWS_AS(plan_truncation(ctx, PhaseKind::beam, 0.5, 1e-10, kC0, 0.2), std::invalid_argument);
}

TEST_CASE("doubling the radius settles within the estimates") {
  const GbOptions opts = make_gb_options(kInc, 1e-10);
  for (double k : {5.0, 20.0}) {
    const PhaseContext ctx = make_phase_context(kInc, 0.1, 0.05);
    const double T0 = select_truncation_radius(ctx, PhaseKind::beam, k, 1e-10, opts.c0);
    RegularizedOptions ro;
    ro.tail_estimate = nonstat_tail_bound(k, T0, opts.amp_bound);
    const RegularizedLimit lim = regularized_limit(gb_integrand(ctx), k, T0, 1e-9, 3, ro);
    CHECK(lim.converged);
    CHECK(lim.history.size() >= 2);
    const QuadratureResult first = oscillatory_integral(gb_integrand(ctx), k, T0, 1e-10, ro);
    CHECK(std::abs(lim.history[1] - first.value) <= first.est_error + lim.result.est_error + 1e-9);
  }
}

TEST_CASE("cutoff shape does not matter at large radius") {
  const GbOptions opts = make_gb_options(kInc, 1e-10);
  const double k = 50.0;
  const PhaseContext ctx = make_phase_context(kInc, 0.2, -0.1);
  const double T = 2.0 * select_truncation_radius(ctx, PhaseKind::beam, k, 1e-10, opts.c0);
  RegularizedOptions a, b;
  b.cutoff = cutoff_smoothstep;
  const QuadratureResult ra = oscillatory_integral(gb_integrand(ctx), k, T, 1e-10, a);
  const QuadratureResult rb = oscillatory_integral(gb_integrand(ctx), k, T, 1e-10, b);
  const double tail = nonstat_tail_bound(k, T, opts.amp_bound);
  CHECK(std::abs(ra.value - rb.value) <= ra.est_error + rb.est_error + 2 * tail + 1e-12);
}

TEST_CASE("jets") {
  const Jet t = jet_variable(0.3, 5);
  const Jet e = jet_exp(t);
  double fact = 1.0;
  for (int j = 0; j <= 5; ++j) {
    if (j > 0) fact *= j;
    CHECK(std::abs(e[j] - std::exp(0.3) / fact) < 1e-15);
  }
  const Jet g = jet_div(jet_constant(1.0, 5), jet_constant(1.0, 5) - jet_variable(0.0, 5));
  for (int j = 0; j <= 5; ++j) CHECK(std::abs(g[j] - 1.0) < 1e-15);
  const Jet sq = jet_mul(t, t);
  CHECK(std::abs(sq[0] - 0.09) < 1e-16);
  CHECK(std::abs(sq[1] - 0.6) < 1e-16);
  CHECK(std::abs(sq[2] - 1.0) < 1e-16);
  const Jet d = jet_derivative(sq);
  CHECK(d.size() == 5);
  CHECK(std::abs(d[0] - 0.6) < 1e-16);
}

TEST_CASE("integration by parts identity") {
  const JetFunction phase = [](const Jet& t) { return Jet(-jet_mul(jet_mul(t, t), t) / 3.0); };
  const JetFunction bump = [](const Jet& t) {
    const int o = int(t.size()) - 1;
    const Jet u = jet_mul(t - jet_constant(2.0, o), jet_constant(4.0, o) - t);
    if (u[0].real() <= 0.0) return Jet(Jet::Zero(t.size()));
    return jet_exp(jet_div(jet_constant(-1.0, o), u));
  };
  for (int n : {1, 2}) {
    const NonstationaryCheck r = nonstat_phase_check(bump, phase, 50.0, 2.0, 4.0, n, 1e-13);
    CHECK(r.residual < 1e-8);
    CHECK(r.residual <= 10 * r.quad_error + 1e-13);
  }
  // L^2[a] = (L[a] / phi')'
  const double h = 1e-5;
  for (double t : {2.5, 3.0, 3.4}) {
    auto l1_over = [&](double s) {
      return ibp_amplitude(bump, phase, s, 1) / phase(jet_variable(s, 1))[1];
    };
    const Complex fd = (l1_over(t + h) - l1_over(t - h)) / (2 * h);
    CHECK(std::abs(fd - ibp_amplitude(bump, phase, t, 2)) < 1e-6 * std::max(1.0, std::abs(fd)));
  }
  // theta = 0 is stationary for delta = eta = 0
  CHECK_THROWS_AS(nonstat_phase_check(bump, phase, 50.0, -1.0, 1.0, 1, 1e-10), std::domain_error);
}
