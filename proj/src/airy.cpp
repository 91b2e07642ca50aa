#include "caustic/airy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace caustic {
namespace {

constexpr double kAiAtZero = 0.355028053887817239260;
constexpr double kAiPrimeAtZero = -0.258819403792806798405;

// Anchor for the inward march in the recessive sector. The expansion is
// accurate to roundoff here, unlike at the crossover radius.
constexpr double kInwardAnchorRadius = 12.0;
constexpr double kMarchStep = 0.5;
constexpr int kMaxAsymptoticTerms = 60;

struct AiryPair {
  Complex ai;
  Complex ai_prime;
};

// Taylor step for w'' = z w from z0 to z0 + h.
// With d_n = c_n h^n: d_{n+2} = (z0 h^2 d_n + h^3 d_{n-1}) / ((n+2)(n+1)).
AiryPair taylor_advance(Complex z0, AiryPair start, Complex h) {
  if (h == Complex{}) return start;
  const Complex h2z = z0 * h * h;
  const Complex h3 = h * h * h;
  Complex d_prev = 0.0;
  Complex d_cur = start.ai;
  Complex d_next = start.ai_prime * h;
  Complex value = d_cur + d_next;
  Complex slope = d_next;
  double scale = std::abs(d_cur) + std::abs(d_next);
  for (int n = 0; n < 400; ++n) {
    const Complex d_new = (h2z * d_cur + h3 * d_prev) / double((n + 2) * (n + 1));
    value += d_new;
    slope += double(n + 2) * d_new;
    d_prev = d_cur;
    d_cur = d_next;
    d_next = d_new;
    scale = std::max(scale, std::abs(d_new));
    if (n > 3 && std::abs(d_prev) + std::abs(d_cur) + std::abs(d_next) <= 1e-18 * scale) break;
  }
  return {value, slope / h};
}

ScaledAiry maclaurin(Complex z) {
  const AiryPair p = taylor_advance(0.0, {kAiAtZero, kAiPrimeAtZero}, z);
  return {p.ai, p.ai_prime, 0.0, AiryMethod::maclaurin};
}

// Valid for |arg z| < pi; used only on |arg z| <= 2pi/3.
ScaledAiry asymptotic_expansion(Complex z) {
  const Complex root = std::sqrt(z);
  const Complex quarter = std::sqrt(root);
  const Complex zeta = (2.0 / 3.0) * z * root;
  const Complex minus_inv = -1.0 / zeta;

  Complex sum_u = 1.0;
  Complex sum_v = 1.0;
  Complex power = 1.0;
  double u = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kMaxAsymptoticTerms; ++k) {
    u *= double((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) / (216.0 * k * (2 * k - 1));
    const double v = -double(6 * k + 1) / double(6 * k - 1) * u;
    power *= minus_inv;
    const Complex term = u * power;
    const double mag = std::abs(term);
    // stop at the smallest term of the divergent series
    if (mag > last) break;
    sum_u += term;
    sum_v += v * power;
    last = mag;
    if (mag < 1e-17) break;
  }
  const Complex phase = std::exp(Complex(0.0, -zeta.imag()));
  const double norm = 0.5 / std::sqrt(kPi);
  return {phase * norm * sum_u / quarter, -phase * norm * quarter * sum_v, -zeta.real(),
          AiryMethod::asymptotic};
}

// Ai(z) = alpha Ai(-alpha z) + conj(alpha) Ai(-conj(alpha) z); both
// arguments lie in |arg| <= 2pi/3 when |arg z| > 2pi/3.
ScaledAiry rotated(Complex z) {
  const Complex ab = std::conj(kAlpha);
  const ScaledAiry a = asymptotic_expansion(-kAlpha * z);
  const ScaledAiry b = asymptotic_expansion(-ab * z);
  const double top = std::max(a.log_scale, b.log_scale);
  const Complex wa = kAlpha * std::exp(a.log_scale - top);
  const Complex wb = ab * std::exp(b.log_scale - top);
  return {wa * a.ai + wb * b.ai, -kAlpha * wa * a.ai_prime - ab * wb * b.ai_prime, top,
          AiryMethod::rotated};
}

ScaledAiry march(Complex z) {
  const double r = std::abs(z);
  const Complex dir = z / r;
  Complex from;
  ScaledAiry start;
  if (std::abs(std::arg(z)) < kPi / 3.0) {
    // recessive direction: integrate inward so the solution stays dominant
    from = kInwardAnchorRadius * dir;
    start = asymptotic_expansion(from);
  } else {
    from = kAiryMaclaurinRadius * dir;
    start = maclaurin(from);
  }
  const int steps = std::max(1, int(std::ceil(std::abs(z - from) / kMarchStep)));
  const Complex h = (z - from) / double(steps);
  AiryPair cur{start.ai, start.ai_prime};
  Complex at = from;
  for (int i = 0; i < steps; ++i) {
    cur = taylor_advance(at, cur, h);
    at = from + double(i + 1) * h;
  }
  return {cur.ai, cur.ai_prime, start.log_scale, AiryMethod::taylor_march};
}

Complex expand(Complex m, double log_scale, bool& overflow) {
  if (m == Complex{} || log_scale == 0.0) return m;
  const double log_mag = log_scale + std::log(std::abs(m));
  if (log_mag >= std::log(std::numeric_limits<double>::max())) {
    overflow = true;
    const double inf = std::numeric_limits<double>::infinity();
    return {m.real() == 0.0 ? 0.0 : std::copysign(inf, m.real()),
            m.imag() == 0.0 ? 0.0 : std::copysign(inf, m.imag())};
  }
  if (std::abs(log_scale) < 600.0) return m * std::exp(log_scale);
  return std::polar(std::exp(log_mag), std::arg(m));
}

} // namespace

const char* to_string(AiryMethod m) {
  switch (m) {
    case AiryMethod::maclaurin: return "maclaurin";
    case AiryMethod::taylor_march: return "taylor_march";
    case AiryMethod::asymptotic: return "asymptotic";
    case AiryMethod::rotated: return "rotated";
  }
  return "unknown";
}

ScaledAiry airy_scaled(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("airy: non-finite argument");
  const double r = std::abs(z);
  if (r <= kAiryMaclaurinRadius) return maclaurin(z);
  if (r < kAiryCrossoverRadius) return march(z);
  if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0) return asymptotic_expansion(z);
  return rotated(z);
}

AiryValue airy(Complex z) {
  const ScaledAiry s = airy_scaled(z);
  AiryValue out;
  out.z = z;
  out.method = s.method;
  out.ai = expand(s.ai, s.log_scale, out.overflow);
  out.ai_prime = expand(s.ai_prime, s.log_scale, out.overflow);
  return out;
}

Complex ai(Complex z) { return airy(z).ai; }

Complex ai_prime(Complex z) { return airy(z).ai_prime; }

Complex ai_ratio(Complex num, Complex den) {
  const ScaledAiry a = airy_scaled(num);
  const ScaledAiry b = airy_scaled(den);
  if (b.ai == Complex{}) throw std::domain_error("ai_ratio: denominator vanishes");
  return a.ai / b.ai * std::exp(a.log_scale - b.log_scale);
}

Complex ai_tilde(Complex z) {
  if (z == Complex{}) throw std::domain_error("ai_tilde: z = 0");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("ai_tilde: non-finite argument");
  const Complex root = std::sqrt(z);
  return 0.5 / std::sqrt(kPi) / std::sqrt(root) * std::exp(-(2.0 / 3.0) * z * root);
}

AiryDerivativePolys airy_derivative_polys(int m) {
  if (m < 0) throw std::invalid_argument("airy_derivative_polys: negative order");
  // p_{m+1} = p_m' + x q_m,  q_{m+1} = p_m + q_m'
  Eigen::VectorXd p = Eigen::VectorXd::Zero(m + 2);
  Eigen::VectorXd q = Eigen::VectorXd::Zero(m + 2);
  p[0] = 1.0;
  for (int step = 0; step < m; ++step) {
    Eigen::VectorXd np = Eigen::VectorXd::Zero(m + 2);
    Eigen::VectorXd nq = Eigen::VectorXd::Zero(m + 2);
    for (int i = 1; i < m + 2; ++i) {
      np[i - 1] += i * p[i];
      nq[i - 1] += i * q[i];
    }
    for (int i = 0; i + 1 < m + 2; ++i) np[i + 1] += q[i];
    nq += p;
    p = np;
    q = nq;
  }
  auto trim = [](const Eigen::VectorXd& c) {
    Eigen::Index n = c.size();
    while (n > 0 && c[n - 1] == 0.0) --n;
    return Eigen::VectorXd(c.head(n));
  };
  return {m, trim(p), trim(q)};
}

Complex ai_derivative(Complex z, int m) {
  const AiryDerivativePolys polys = airy_derivative_polys(m);
  const AiryValue v = airy(z);
  return polyval(polys.p, z) * v.ai + polyval(polys.q, z) * v.ai_prime;
}

} // namespace caustic
