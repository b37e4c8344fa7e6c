#include "ginoe/asymptotics.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>

#include <boost/math/tools/roots.hpp>

#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"
#include "ginoe/quadrature.hpp"
#include "ginoe/specfn.hpp"
#include "numeric_util.hpp"

namespace ginoe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-12;
const AdaptiveOptions kQuad{1e-13, 14};

using detail::log_expm1;
using detail::sigmoid;
using detail::softplus;
using Arg = detail::OneMinusExp;

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw DomainError("tau must lie in [0, 1)");
}
void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
}
double u_of(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("z must be finite and non-negative");
  return std::log(z);
}

// sqrt((1+tau)/(1-tau)/(2 pi)) = x_s / 2
double strong_scale(double tau) { return std::sqrt((1.0 + tau) / (1.0 - tau) / (2.0 * std::numbers::pi)); }

// Points where the tilted Fermi factor sigma(u - log expm1(a)) switches, in the variable a.
std::vector<double> switch_points(double u) {
  std::vector<double> a;
  const double sp = u == -kInf ? 0.0 : softplus(u);
  if (sp > 0) a.insert(a.end(), {0.25 * sp, sp, 4.0 * sp});
  if (u < 0) {
    const double z = std::exp(u);
    if (z > 0) a.insert(a.end(), {0.1 * z, z, 10.0 * z});
  }
  return a;
}

// Breakpoints for a = alpha^2 s^2 on s in (0,1).
std::vector<double> weak_breakpoints(double u, double alpha) {
  std::vector<double> s;
  for (double a : switch_points(u)) {
    const double v = std::sqrt(a) / alpha;
    if (v > 0 && v < 1) s.push_back(v);
  }
  return s;
}

double strong_dphi_du(double u, double tau) {
  std::vector<double> t;
  for (double a : switch_points(u)) t.push_back(std::sqrt(a));
  const double cutoff = std::sqrt((u == -kInf ? 0.0 : softplus(u)) + 45.0) + 1.0;
  std::vector<double> inner;
  for (double b : t)
    if (b > 0 && b < cutoff) inner.push_back(b);
  auto f = [&](double x) {
    const double y = u - log_expm1(x * x);
    return sigmoid(y) * sigmoid(-y);
  };
  return strong_scale(tau) * 2.0 / std::sqrt(std::numbers::pi) * integrate(f, 0.0, cutoff, inner, kQuad);
}

double weak_psi_u(double u, double alpha) {
  const Arg x = Arg::from_u(u);
  if (x.w == 0.0) return 0.0;
  auto f = [&](double s) { return x.log_one_minus_wq(alpha * alpha * s * s); };
  return 2.0 / std::numbers::pi * integrate_semicircle(f, weak_breakpoints(u, alpha), kQuad);
}

double weak_phi_u(double u, double alpha) {
  if (u == -kInf) return 0.0;
  auto f = [&](double s) { return sigmoid(u - log_expm1(alpha * alpha * s * s)); };
  return 2.0 / std::numbers::pi * integrate_semicircle(f, weak_breakpoints(u, alpha), kQuad);
}

double weak_dphi_du(double u, double alpha) {
  if (u == -kInf) return 0.0;
  auto f = [&](double s) {
    const double y = u - log_expm1(alpha * alpha * s * s);
    return sigmoid(y) * sigmoid(-y);
  };
  return 2.0 / std::numbers::pi * integrate_semicircle(f, weak_breakpoints(u, alpha), kQuad);
}

// Safeguarded Newton on the increasing map u -> Phi(e^u) - target, inside a bracket found by doubling.
double solve_stationarity(double target, const Regime& regime) {
  auto g = [&](double u) { return phi_big_u(u, regime) - target; };
  constexpr double kReach = 1e6;
  double lo = 0.0, hi = 0.0;
  const double g0 = g(0.0);
  if (g0 == 0.0) return 0.0;
  if (g0 < 0) {
    for (double step = 1.0;; step *= 2) {
      if (step > kReach) throw ConvergenceError("rate: stationarity bracket not found above u = 0", hi, step);
      lo = hi;
      hi = step;
      if (g(hi) >= 0) break;
    }
  } else {
    for (double step = 1.0;; step *= 2) {
      if (step > kReach) throw ConvergenceError("rate: stationarity bracket not found below u = 0", lo, -step);
      hi = lo;
      lo = -step;
      if (g(lo) <= 0) break;
    }
  }
  double u = 0.5 * (lo + hi), prev = u;
  for (int it = 0; it < 200; ++it) {
    const double gu = g(u);
    if (gu == 0.0) return u;
    (gu < 0 ? lo : hi) = u;
    const double d = phi_big_du(u, regime);
    double next = u - gu / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    prev = u;
    u = next;
    if (std::abs(u - prev) <= 0.1 * kTol * std::max(1.0, std::abs(u)) || hi - lo <= kTol * std::max(1.0, std::abs(u)))
      return u;
  }
  throw ConvergenceError("rate: stationarity solve did not converge", prev, u);
}

}  // namespace

double psi_s(double z, double tau) {
  check_tau(tau);
  return psi_u(u_of(z), Regime::strong(tau));
}
double psi_w(double z, double alpha) {
  check_alpha(alpha);
  return psi_u(u_of(z), Regime::weak(alpha));
}
double psi(double z, const Regime& regime) { return psi_u(u_of(z), regime); }

double phi_big_s(double z, double tau) {
  check_tau(tau);
  return phi_big_u(u_of(z), Regime::strong(tau));
}
double phi_big_w(double z, double alpha) {
  check_alpha(alpha);
  return phi_big_u(u_of(z), Regime::weak(alpha));
}
double phi_big(double z, const Regime& regime) { return phi_big_u(u_of(z), regime); }

double psi_u(double u, const Regime& regime) {
  if (std::isnan(u) || u == kInf) throw DomainError("psi: u must be < +inf");
  if (regime.is_strong()) return -strong_scale(regime.tau()) * polylog_one_minus_exp(1.5, u);
  return weak_psi_u(u, regime.alpha());
}

double phi_big_u(double u, const Regime& regime) {
  if (std::isnan(u) || u == kInf) throw DomainError("Phi: u must be < +inf");
  if (regime.is_strong()) return u == -kInf ? 0.0 : strong_scale(regime.tau()) * polylog_zratio(0.5, u);
  return weak_phi_u(u, regime.alpha());
}

double phi_big_du(double u, const Regime& regime) {
  if (std::isnan(u) || u == kInf) throw DomainError("Phi': u must be < +inf");
  if (regime.is_strong()) return u == -kInf ? 0.0 : strong_dphi_du(u, regime.tau());
  return weak_dphi_du(u, regime.alpha());
}

Interval rate_domain(const Regime& regime) { return regime.is_strong() ? Interval{0.0, kInf} : Interval{0.0, 1.0}; }

RateEval rate(double x, const Regime& regime) {
  const Interval d = rate_domain(regime);
  if (!(x > d.lo && x < d.hi))
    throw RangeError("rate: x = " + format_double(x) + " outside the admissible interval", d.lo, d.hi);
  const double u = solve_stationarity(0.5 * x, regime);
  double phi = 0.5 * x * u - psi_u(u, regime);
  if (phi < 0 && phi > -1e-15) phi = 0.0;
  return {x, u, phi, regime};
}

std::vector<RateEval> rate_curve_serial(const std::vector<double>& xs, const Regime& regime) {
  std::vector<RateEval> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(rate(x, regime));
  return out;
}

std::vector<RateEval> rate_curve(const std::vector<double>& xs, const Regime& regime) {
  std::vector<RateEval> out(xs.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = rate(xs[i], regime);
    } catch (...) {
#pragma omp critical(ginoe_rate_curve)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Minimiser minimiser(const Regime& regime) {
  if (regime.is_strong()) {
    const double xs = 2.0 * strong_scale(regime.tau());
    return {xs, 1.0 / ((2.0 - std::sqrt(2.0)) * xs)};
  }
  const double a = regime.alpha();
  return {c_alpha(a), 1.0 / (2.0 * (c_alpha(a) - c_alpha(std::sqrt(2.0) * a)))};
}

Minimiser minimiser_numeric(const Regime& regime, double h) {
  auto u_star = [&](double x) { return rate(x, regime).u_star; };
  double lo, hi;
  if (regime.is_strong()) {
    lo = 1e-3;
    hi = 1.0;
    while (u_star(hi) < 0) {
      lo = hi;
      hi *= 2;
    }
  } else {
    lo = 1e-6;
    hi = 1.0 - 1e-9;
  }
  std::uintmax_t iters = 200;
  const auto r =
      boost::math::tools::toms748_solve(u_star, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  const double x = 0.5 * (r.first + r.second);
  const double step = h * x;
  const double f0 = rate(x, regime).phi;
  const double fp = rate(x + step, regime).phi;
  const double fm = rate(x - step, regime).phi;
  return {x, (fp - 2.0 * f0 + fm) / (step * step)};
}

double typical_value(const Regime& regime) { return minimiser(regime).x_min; }

double mean_coefficient(const Regime& regime) {
  if (regime.is_strong()) return std::sqrt(2.0 * (1.0 + regime.tau()) / (std::numbers::pi * (1.0 - regime.tau())));
  return c_alpha(regime.alpha());
}

double variance_coefficient(const Regime& regime) {
  if (regime.is_strong()) return (2.0 - std::sqrt(2.0)) * mean_coefficient(regime);
  const double a = regime.alpha();
  return 2.0 * (c_alpha(a) - c_alpha(std::sqrt(2.0) * a));
}

double trace_power_limit(int k, const Regime& regime) {
  if (k < 1) throw DomainError("trace_power_limit: power must be >= 1");
  if (regime.is_strong()) return strong_scale(regime.tau()) / std::sqrt(double(k));
  return 0.5 * c_alpha(std::sqrt(double(k)) * regime.alpha());
}

LimitCumulants limiting_cumulant(int ell, const Regime& regime) {
  if (ell < 1) throw DomainError("limiting_cumulant: order must be >= 1");
  double sum = 0.0, fact = 1.0;  // fact = (m-1)!
  for (int m = 1; m <= ell; ++m) {
    if (m > 1) fact *= m - 1;
    const double term = trace_power_limit(m, regime);
    const double sign = m % 2 ? 1.0 : -1.0;
    sum += sign * fact * stirling2(ell, m).get_d() * term;
  }
  return {ell, std::ldexp(sum, ell)};
}

double universality_gap(double x, double tau1, double tau2) {
  if (!(x > 0)) throw DomainError("universality_gap: x must be positive");
  check_tau(tau1);
  check_tau(tau2);
  auto scaled = [&](double tau) {
    const double xs = typical_value(Regime::strong(tau));
    return rate(xs * x, Regime::strong(tau)).phi / xs;
  };
  return std::abs(scaled(tau1) - scaled(tau2));
}

TailConstants tail_constants(const Regime& regime) {
  if (regime.is_strong()) {
    const double tau = regime.tau();
    // -Psi_s(0) = Li_{3/2}(1) times the strong scale.
    return {strong_scale(tau) * zeta_three_halves(), (1.0 - tau) / (1.0 + tau) * std::numbers::pi * std::numbers::pi / 48.0,
            RightTail::CubicCoefficient};
  }
  const double a = regime.alpha();
  return {-psi_u(-kInf, regime), a * a / 8.0, RightTail::LimitAtOne};
}

void write_rate_csv(std::ostream& os, const std::vector<RateEval>& curve, const OutputHeader& header) {
  write_csv_header(os, header);
  write_csv_row(os, {"x", "u_star", "phi"});
  for (const RateEval& r : curve) write_csv_row(os, {format_double(r.x), format_double(r.u_star), format_double(r.phi)});
}

void write_rate_json(std::ostream& os, const std::vector<RateEval>& curve, const Regime& regime,
                     const OutputHeader& header) {
  nlohmann::json j;
  j["header"] = header_json(header);
  j["regime"] = regime.describe();
  const Minimiser m = minimiser(regime);
  j["minimiser"] = {{"x_min", m.x_min}, {"curvature", m.curvature}};
  const TailConstants t = tail_constants(regime);
  j["tail_constants"] = {{"left", t.left},
                         {"right", t.right},
                         {"right_kind", t.right_kind == RightTail::CubicCoefficient ? "cubic_coefficient" : "limit_at_one"}};
  nlohmann::json cum = nlohmann::json::array();
  for (int ell = 1; ell <= 4; ++ell) cum.push_back({{"ell", ell}, {"value", limiting_cumulant(ell, regime).value}});
  j["limiting_cumulants"] = cum;
  nlohmann::json rows = nlohmann::json::array();
  for (const RateEval& r : curve) rows.push_back({{"x", r.x}, {"u_star", r.u_star}, {"phi", r.phi}});
  j["curve"] = rows;
  os << j.dump(2) << '\n';
}

}  // namespace ginoe
