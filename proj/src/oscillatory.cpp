#include "caustic/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace caustic {
namespace {

// QUADPACK G7K15 abscissae and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7]
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Accumulator {
  Complex value;
  double error = 0.0;
  std::size_t evals = 0;
  std::size_t panels = 0;
  bool failed = false;
};

void adapt(const ComplexOfReal& g, double a, double b, double tol, int depth,
           const PanelOptions& opts, Accumulator& acc) {
  const GaussKronrodEstimate e = gauss_kronrod15(g, a, b);
  acc.evals += 15;
  const bool tiny = (b - a) <= 1e-13 * std::max(1.0, std::abs(a));
  const bool at_floor = e.error <= e.roundoff_floor;
  if (e.error <= tol || at_floor || depth >= opts.max_depth || tiny || acc.evals > opts.max_evals) {
    acc.value += e.kronrod;
    acc.error += e.error;
    if (e.error > tol && !at_floor) acc.failed = true;
    return;
  }
  const double mid = 0.5 * (a + b);
  adapt(g, a, mid, 0.5 * tol, depth + 1, opts, acc);
  adapt(g, mid, b, 0.5 * tol, depth + 1, opts, acc);
}

} // namespace

GaussKronrodEstimate gauss_kronrod15(const ComplexOfReal& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Complex fv[15];
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  Complex resk = kWgk[7] * fv[7];
  Complex resg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const Complex pair = fv[j] + fv[14 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const Complex mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  const double h = std::abs(half);
  resasc *= h;
  resabs *= h;
  const double floor = 50.0 * kEps * resabs;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * resabs, err);
  return {resk * half, resg * half, err, floor};
}

QuadratureResult integrate_oscillatory(const OscillatoryIntegrand& f, double k, double lo,
                                       double hi, double tol, const PanelOptions& opts) {
  if (!(k > 0.0)) throw std::invalid_argument("integrate_oscillatory: k must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_oscillatory: tol must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("integrate_oscillatory: bad interval");

  QuadratureResult res;
  if (hi == lo) return res;

  auto slope = [&](double t) {
    if (f.phase_slope) return std::abs(f.phase_slope(t));
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    return std::abs((f.phase(t + h) - f.phase(t - h)) / (2.0 * h));
  };
  const ComplexOfReal g = [&](double t) -> Complex {
    const Complex a = f.amplitude(t);
    if (a == Complex{}) return 0.0;
    return a * std::exp(kI * k * f.phase(t));
  };

  const double span = hi - lo;
  const double per = opts.periods_per_panel * 2.0 * kPi;
  Accumulator acc;
  double a = lo;
  while (a < hi) {
    double len = opts.max_panel;
    const double fa = k * slope(a);
    if (fa > 0.0) len = std::min(len, per / fa);
    double b = std::min(hi, a + len);
    const double fb = k * slope(b);
    if (fb > fa) b = std::min(hi, a + std::min(len, per / fb));
    if (hi - b < 1e-9 * span) b = hi;
    adapt(g, a, b, tol * (b - a) / span, 0, opts, acc);
    ++acc.panels;
    a = b;
    if (acc.evals > opts.max_evals) break;
  }

  res.value = acc.value;
  res.est_error = acc.error;
  res.n_evals = acc.evals;
  res.n_panels = acc.panels;
  if (acc.failed || a < hi)
    throw QuadratureFailure("integrate_oscillatory: tolerance not met (error estimate " +
                                std::to_string(acc.error) + ")",
                            res);
  return res;
}

double cutoff_psi(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double f_in = std::exp(-1.0 / (2.0 - a));
  const double f_out = std::exp(-1.0 / (a - 1.0));
  return f_in / (f_in + f_out);
}

double cutoff_smoothstep(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double t = 2.0 - a;
  return t * t * t * t * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

QuadratureResult oscillatory_integral(const OscillatoryIntegrand& f, double k, double T,
                                      double tol, const RegularizedOptions& opts) {
  if (!(T > 0.0)) throw std::invalid_argument("oscillatory_integral: T must be positive");
  const double window = opts.window > 0.0 ? std::min(opts.window, 2.0 * T) : 2.0 * T;
  const double scale = std::cbrt(k);
  OscillatoryIntegrand g = f;
  const RealOfReal cut = opts.cutoff;
  g.amplitude = [&](double t) -> Complex {
    const double c = cut(t / T);
    return c == 0.0 ? Complex{} : c * f.amplitude(t);
  };
  auto finish = [&](QuadratureResult r) {
    r.value *= scale;
    r.est_error = r.est_error * scale + opts.tail_estimate;
    r.truncation_radius = T;
    r.window = window;
    return r;
  };
  try {
    return finish(integrate_oscillatory(g, k, -window, window, tol / scale, opts.panels));
  } catch (const QuadratureFailure& e) {
    throw QuadratureFailure(e.what(), finish(e.partial()));
  }
}

double nonstat_tail_bound(double k, double T, double amp_bound) {
  return std::cbrt(k) * 4.0 * T * amp_bound * std::exp(-k * T * T * T / (16.0 * std::numbers::e));
}

TruncationPlan plan_truncation(const PhaseContext& ctx, PhaseKind kind, double k, double tol,
                               double c0, double amp_bound, bool use_damping_window) {
  if (!(k >= 1.0)) throw std::invalid_argument("plan_truncation: k must be >= 1");
  if (!(tol > 0.0) || !(c0 > 0.0)) throw std::invalid_argument("plan_truncation: tol, c0");
  TruncationPlan plan;
  plan.amp_bound = amp_bound;
  plan.floor = 2.0 * c0 * (1.0 + std::sqrt(std::abs(ctx.eta)));

  const double scale = std::cbrt(k);
  auto nonstat = [&](double T) { return nonstat_tail_bound(k, T, amp_bound); };
  double T = plan.floor;
  while (nonstat(T) > tol && T < 1e4) T *= 1.25;
  plan.radius = T;
  plan.nonstat_bound = nonstat(T);
  plan.window = 2.0 * T;

  if (kind == PhaseKind::airy) {
    plan.damping_bound = 1.0;
    return plan;
  }

  const int n = std::max(4000, int(std::ceil(2.0 * T / 0.01)));
  const double step = 2.0 * T / n;
  auto im_phase = [&](double t) {
    return std::min(phi_g(ctx, t).imag(), phi_g(ctx, -t).imag());
  };
  double running = std::numeric_limits<double>::infinity();
  bool window_open = use_damping_window;
  plan.damping_bound = -1.0;
  for (int j = n; j >= 0; --j) {
    const double t = j * step;
    running = std::min(running, im_phase(t));
    if (plan.damping_bound < 0.0 && t <= T) plan.damping_bound = std::exp(-k * running);
    if (window_open) {
      // 0.99 absorbs dips between samples
      const double skipped = scale * amp_bound * 2.0 * (2.0 * T - t) * std::exp(-0.99 * k * running);
      if (skipped < 0.01 * tol) {
        plan.window = t;
        plan.window_bound = skipped;
      } else {
        window_open = false;
      }
    }
    if (!window_open && plan.damping_bound >= 0.0) break;
  }
  return plan;
}

double select_truncation_radius(const PhaseContext& ctx, PhaseKind kind, double k, double tol,
                                double c0) {
  return plan_truncation(ctx, kind, k, tol, c0, 1.0).radius;
}

RegularizedLimit regularized_limit(const OscillatoryIntegrand& f, double k, double T0, double tol,
                                   int max_doublings, const RegularizedOptions& opts) {
  RegularizedLimit out;
  RegularizedOptions inner = opts;
  inner.window = 0.0;
  double T = T0;
  for (int i = 0; i <= max_doublings; ++i, T *= 2.0) {
    out.result = oscillatory_integral(f, k, T, 0.1 * tol, inner);
    out.radii.push_back(T);
    out.history.push_back(out.result.value);
    if (i > 0 && std::abs(out.history[i] - out.history[i - 1]) < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

Jet jet_variable(double t0, int order) {
  Jet j = Jet::Zero(order + 1);
  j[0] = t0;
  if (order > 0) j[1] = 1.0;
  return j;
}

Jet jet_constant(Complex c, int order) {
  Jet j = Jet::Zero(order + 1);
  j[0] = c;
  return j;
}

Jet jet_mul(const Jet& a, const Jet& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  Jet c = Jet::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i <= j; ++i) c[j] += a[i] * b[j - i];
  return c;
}

Jet jet_div(const Jet& a, const Jet& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  if (b[0] == Complex{}) throw std::domain_error("jet_div: division by zero");
  Jet c = Jet::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex s = a[j];
    for (Eigen::Index i = 1; i <= j; ++i) s -= b[i] * c[j - i];
    c[j] = s / b[0];
  }
  return c;
}

Jet jet_exp(const Jet& a) {
  Jet e = Jet::Zero(a.size());
  e[0] = std::exp(a[0]);
  for (Eigen::Index n = 1; n < a.size(); ++n) {
    Complex s = 0.0;
    for (Eigen::Index j = 1; j <= n; ++j) s += double(j) * a[j] * e[n - j];
    e[n] = s / double(n);
  }
  return e;
}

Jet jet_derivative(const Jet& a) {
  if (a.size() < 2) return Jet::Zero(1);
  Jet d(a.size() - 1);
  for (Eigen::Index j = 0; j + 1 < a.size(); ++j) d[j] = double(j + 1) * a[j + 1];
  return d;
}

Complex ibp_amplitude(const JetFunction& amp, const JetFunction& phase, double t, int n) {
  if (n < 0) throw std::invalid_argument("ibp_amplitude: negative order");
  Jet b = amp(jet_variable(t, n));
  const Jet slope = jet_derivative(phase(jet_variable(t, n + 1)));
  for (int i = 0; i < n; ++i) b = jet_derivative(jet_div(b, slope.head(b.size())));
  return b[0];
}

NonstationaryCheck nonstat_phase_check(const JetFunction& amp, const JetFunction& phase, double k,
                                       double a, double b, int n, double tol) {
  if (!(b > a)) throw std::invalid_argument("nonstat_phase_check: empty window");
  if (n < 1) throw std::invalid_argument("nonstat_phase_check: n must be >= 1");
  auto slope = [&](double t) { return phase(jet_variable(t, 1))[1]; };
  double smallest = std::numeric_limits<double>::infinity(), largest = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double s = std::abs(slope(a + (b - a) * i / 2000.0));
    smallest = std::min(smallest, s);
    largest = std::max(largest, s);
  }
  if (smallest <= 1e-10 * std::max(1.0, largest))
    throw std::domain_error("nonstat_phase_check: stationary point in window");

  OscillatoryIntegrand f;
  f.phase = [&](double t) { return phase(jet_variable(t, 0))[0]; };
  f.phase_slope = slope;
  f.amplitude = [&](double t) { return amp(jet_variable(t, 0))[0]; };

  NonstationaryCheck out;
  const QuadratureResult lhs = integrate_oscillatory(f, k, a, b, 0.5 * tol);
  // integration by parts: int a e^{ik phi} = -(1/(ik)) int L[a] e^{ik phi}
  const Complex factor = std::pow(-kI * k, -n);
  f.amplitude = [&](double t) { return ibp_amplitude(amp, phase, t, n); };
  const QuadratureResult rhs = integrate_oscillatory(f, k, a, b, 0.5 * tol / std::abs(factor));
  out.direct = lhs.value;
  out.transformed = factor * rhs.value;
  out.residual = std::abs(out.direct - out.transformed);
  out.quad_error = lhs.est_error + std::abs(factor) * rhs.est_error;
  return out;
}

} // namespace caustic
