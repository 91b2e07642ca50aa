#include "doctest.h"

#include <cmath>

#include "caustic/beam.hpp"

using namespace caustic;

namespace {
Incidence with_xi0(double xi0) { return make_incidence(std::acos(xi0)); }
} // namespace

TEST_CASE("incidence") {
  const Incidence inc = make_incidence(kPi / 3);
  CHECK(inc.xi0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inc.eta0 == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(inc.x_c == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(inc.x_c == inc.xi0 * inc.xi0);
  CHECK(std::abs(inc.xi0 * inc.xi0 + inc.eta0 * inc.eta0 - 1.0) < 1e-15);
  CHECK(std::abs(inc.beta - Complex(1.0, 1.0)) < 1e-15);

  const Incidence fig = make_incidence(std::asin(0.75));
  CHECK(fig.eta0 == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(make_incidence(0.05), std::invalid_argument);
  CHECK_THROWS_AS(make_incidence(kPi / 2 - 0.01), std::invalid_argument);
  CHECK_NOTHROW(make_incidence(0.05, 0.01, 1.0));
}

TEST_CASE("q polynomial and its sandwich") {
  const Incidence inc = with_xi0(0.6);
  CHECK(q_poly(0.0, inc) == Complex(1.0, 0.0));
  const Complex q = q_poly(0.6, inc);
  CHECK(std::abs(q - Complex(0.64, 0.768)) < 1e-15);
  CHECK(std::abs(q - inc.eta0 * inc.eta0 * inc.beta) < 1e-15);

  for (double xi0 : {0.2, 0.5, 0.8}) {
    const Incidence c = with_xi0(xi0);
    double lo = 1e300, hi = 0;
    for (double t = -50.0; t <= 50.0; t += 0.01) {
      const double r = std::abs(q_poly(xi0 + t, c)) / (1.0 + t * t);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    CAPTURE(xi0);
    CHECK(lo > 0.0);
    CHECK(std::log10(hi / lo) < 1.0);
  }
}

TEST_CASE("branch safe root") {
  const Incidence inc = make_incidence(kPi / 3);
  CHECK(std::abs(sqrt_branch_safe(1.0, inc) - 1.0) < 1e-15);
  CHECK_THROWS_AS(sqrt_branch_safe(-2.0 * inc.beta, inc), std::domain_error);
  CHECK_THROWS_AS(sqrt_branch_safe(0.0, inc), std::domain_error);
  const Complex w(0.3, -1.7);
  const Complex r = sqrt_branch_safe(w, inc);
  CHECK(std::abs(r * r - w) < 1e-14);
  // q(xi0) = eta0^2 beta has root eta0 sqrt(beta)
  CHECK(std::abs(sqrt_branch_safe(q_poly(inc.xi0, inc), inc) - inc.eta0 * std::sqrt(inc.beta)) < 1e-15);

  // principal root jumps near s = 1/xi0, the safe one does not
  for (double xi0 : {0.5, 0.6}) {
    const Incidence c = with_xi0(xi0);
    double jump_safe = 0, jump_principal = 0, step_scale = 0;
    Complex prev_s = sqrt_branch_safe(q_poly(0.0, c), c), prev_p = std::sqrt(q_poly(0.0, c));
    const double top = std::max(3.0, 1.0 / xi0 + 0.5);
    for (double s = 1e-3; s <= top; s += 1e-3) {
      const Complex q = q_poly(s, c);
      const Complex rs = sqrt_branch_safe(q, c), rp = std::sqrt(q);
      jump_safe = std::max(jump_safe, std::abs(rs - prev_s));
      jump_principal = std::max(jump_principal, std::abs(rp - prev_p));
      step_scale = std::max(step_scale, std::abs(q_poly(s, c) - q_poly(s - 1e-3, c)));
      prev_s = rs;
      prev_p = rp;
    }
    CAPTURE(xi0);
    CHECK(jump_safe < 10.0 * step_scale);
    CHECK(jump_principal > 0.5);
  }
}

TEST_CASE("hessian entries") {
  const Incidence inc = with_xi0(0.6);
  for (double s : {0.0, 0.3, 1.0, 5.0}) {
    const double expect = inc.eta0 * inc.eta0 / std::norm(q_poly(s, inc));
    CHECK(std::abs(m11(s, inc).imag() - expect) <= 1e-13 * expect);
  }
  const Complex m = m11(0.6, inc);
  CHECK(std::abs(m - Complex(-0.6, 0.28) / Complex(0.64, 0.768)) < 1e-15);
  CHECK(m.imag() == doctest::Approx(0.64 / 0.999424).epsilon(1e-13));
  CHECK(std::abs(m22(0.6, inc)) == 0.0);
  CHECK(std::abs(m22(0.0, inc) - inc.xi0 * inc.beta / 2.0) < 1e-15);

  for (double s = -3.0; s <= 6.0; s += 0.25) {
    const Eigen::Matrix2cd closed = hessian(s, inc);
    const Eigen::Matrix2cd inverse = hessian_by_inverse(s, inc);
    CHECK((closed - inverse).norm() < 1e-13 * (1.0 + closed.norm()));
    CHECK(std::abs(closed(0, 0) - m11(s, inc)) < 1e-14);
    CHECK(std::abs(closed(1, 1) - m22(s, inc)) < 1e-14);
    CHECK(m11(s, inc).imag() > 0.0);
  }
  CHECK((hessian(0.0, inc) - initial_hessian(inc)).norm() == 0.0);
}

TEST_CASE("riccati and trace identities") {
  const Incidence inc = make_incidence(kPi / 3);
  const double h = 1e-4;
  for (double s = -2.0; s <= 4.0; s += 0.1) {
    const Eigen::Matrix2cd m = hessian(s, inc);
    const Eigen::Matrix2cd dm = (hessian(s + h, inc) - hessian(s - h, inc)) / (2 * h);
    CHECK((dm + 2.0 * m * m).cwiseAbs().maxCoeff() < 1e-6);
    const double g = 1e-5;
    const Complex dlogq = std::log(q_poly(s + g, inc) / q_poly(s - g, inc)) / (2 * g);
    CHECK(std::abs(dlogq - 2.0 * m.trace()) < 1e-8);
  }
}

TEST_CASE("ray geometry") {
  const Incidence inc = make_incidence(kPi / 3);
  const GaussianEnvelope env;
  const BeamFrame top = beam_frame(inc.xi0, 0.0, inc, env);
  CHECK(top.position[0] == doctest::Approx(inc.x_c).epsilon(1e-15));
  CHECK(top.momentum[0] == 0.0);
  // dS/ds = 2 (1 - x(s))
  for (double s = -1.0; s <= 2.0; s += 0.125) {
    const double h = 1e-5;
    const double ds = (beam_frame(s + h, 0.3, inc, env).phase_s - beam_frame(s - h, 0.3, inc, env).phase_s) / (2 * h);
    const BeamFrame f = beam_frame(s, 0.3, inc, env);
    CHECK(ds == doctest::Approx(2.0 * (1.0 - f.position[0])).epsilon(1e-9));
    CHECK(std::abs(f.amplitude) * std::sqrt(std::abs(f.q)) ==
          doctest::Approx(env(0.3) * std::sqrt(std::abs(m22(0.0, inc)))).epsilon(1e-13));
  }
}

TEST_CASE("beam value") {
  const Incidence inc = make_incidence(kPi / 3);
  const GaussianEnvelope env;
  const double k = 50.0, z = 0.4;
  const Complex start = beam_value(0.0, z, z, inc, k, env);
  const Complex expect = env(z) * std::sqrt(-kI * m22(0.0, inc)) * std::polar(1.0, k * inc.eta0 * z);
  CHECK(std::abs(start - expect) < 1e-14);

  // |value| |q(s*)|^{1/2} constant on the central ray
  const double ref = std::abs(start);
  for (double s = 0.0; s <= 2.0; s += 0.1) {
    const double x = 2 * s * inc.xi0 - s * s, y = z + 2 * s * inc.eta0;
    CHECK(std::abs(beam_value(x, y, z, inc, k, env)) * std::sqrt(std::abs(q_poly(s, inc))) ==
          doctest::Approx(ref).epsilon(1e-12));
  }
  // Gaussian decay off the ray
  const double s = 0.7;
  const double x0 = 2 * s * inc.xi0 - s * s, y = z + 2 * s * inc.eta0;
  const double on = std::abs(beam_value(x0, y, z, inc, k, env));
  for (double dx : {0.05, 0.1, 0.2}) {
    const double off = std::abs(beam_value(x0 + dx, y, z, inc, k, env));
    CHECK(off / on == doctest::Approx(std::exp(-0.5 * k * m11(s, inc).imag() * dx * dx)).epsilon(1e-12));
  }
}

TEST_CASE("gaussian envelope") {
  const GaussianEnvelope env{0.7};
  const double k = 30.0;
  // transform by direct quadrature
  for (double eta : {0.0, 0.02, 0.05}) {
    Complex sum = 0.0;
    const double h = 1e-3;
    for (double y = -10.0; y <= 10.0; y += h) sum += env(y) * std::polar(1.0, -k * y * eta) * h;
    sum *= std::sqrt(k / (2 * kPi));
    CHECK(std::abs(sum - env.spectrum(eta, k)) < 1e-10);
  }
  const double w = env.spectral_half_width(k, 1e-14);
  CHECK(env.spectrum(w, k) / env.spectrum(0, k) == doctest::Approx(1e-14).epsilon(1e-9));
}
