#include "ginoe/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include "ginoe/errors.hpp"
#include "ginoe/quadrature.hpp"
#include "numeric_util.hpp"

namespace ginoe {

namespace {

// GSL's default handler aborts; we check status codes instead.
const bool kGslQuiet = [] {
  gsl_set_error_handler_off();
  return true;
}();

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kTwoOverSqrtPi = 2.0 / std::sqrt(std::numbers::pi);

using detail::log_expm1;
using detail::sigmoid;
using detail::softplus;
using Arg = detail::OneMinusExp;

enum class Order { ThreeHalves, Half, MinusHalf };

Order order_of(double s) {
  if (s == 1.5) return Order::ThreeHalves;
  if (s == 0.5) return Order::Half;
  if (s == -0.5) return Order::MinusHalf;
  throw DomainError("polylog: order must be one of 3/2, 1/2, -1/2");
}

std::vector<double> breakpoints_for(const Arg& x, double& cutoff) {
  const double sp = x.u == -kInf ? 0.0 : softplus(x.u);
  const double tb = std::sqrt(sp);
  cutoff = std::sqrt(sp + 45.0) + 1.0;
  std::vector<double> b;
  if (tb > 0) {
    b = {0.5 * tb, tb, 2.0 * tb};
    if (tb > 2.0) b.insert(b.end(), {tb - 1.0 / tb, tb + 1.0 / tb, tb + 3.0 / tb});
  }
  b.push_back(1.0);
  return b;
}

double li_three_halves_integral(const Arg& x) {
  double cutoff = 0;
  auto bps = breakpoints_for(x, cutoff);
  const AdaptiveOptions opts{1e-12, 14};
  if (x.z < 0.5) {
    // Peel off log(t^2 + z) on [0,1], which carries the (near-)logarithmic singularity at t = 0.
    auto smooth = [&](double t) {
      const double a = t * t;
      return std::log(x.one_minus_wq(a) / (a + x.z));
    };
    const double rz = std::sqrt(x.z);
    const double peeled = std::log1p(x.z) - 2.0 + (rz > 0 ? 2.0 * rz * std::atan(1.0 / rz) : 0.0);
    std::vector<double> inner;
    for (double b : bps)
      if (b < 1.0) inner.push_back(b);
    const double head = integrate(smooth, 0.0, 1.0, inner, opts) + peeled;
    auto f = [&](double t) { return x.log_one_minus_wq(t * t); };
    std::vector<double> outer;
    for (double b : bps)
      if (b > 1.0) outer.push_back(b);
    const double tail = integrate(f, 1.0, std::max(cutoff, 2.0), outer, opts);
    return -kTwoOverSqrtPi * (head + tail);
  }
  auto f = [&](double t) { return x.log_one_minus_wq(t * t); };
  return -kTwoOverSqrtPi * integrate(f, 0.0, cutoff, bps, opts);
}

// int_0^inf sigma(u - log expm1(t^2)) dt and the same divided by (1 - w e^{-t^2}).
double sigma_integral(const Arg& x, bool divide) {
  double cutoff = 0;
  auto bps = breakpoints_for(x, cutoff);
  if (x.z < 1.0) {
    const double rz = std::sqrt(x.z);
    bps.insert(bps.end(), {0.25 * rz, rz, 4.0 * rz});
  }
  auto f = [&](double t) {
    const double a = t * t;
    const double s = sigmoid(x.u - log_expm1(a));
    return divide ? s / x.one_minus_wq(a) : s;
  };
  return integrate(f, 0.0, cutoff, bps, AdaptiveOptions{1e-12, 14});
}

double polylog_core(Order s, const Arg& x) {
  if (x.w == 0.0) return 0.0;
  switch (s) {
    case Order::ThreeHalves:
      return li_three_halves_integral(x);
    case Order::Half:
      return std::expm1(-x.u) * kTwoOverSqrtPi * sigma_integral(x, false);
    case Order::MinusHalf:
      return std::expm1(-x.u) * kTwoOverSqrtPi * sigma_integral(x, true);
  }
  return 0.0;
}

double series_sum(double s, double w, int shift) {
  // sum_{k>=1} w^{k-shift} / k^s
  double sum = 0.0, pw = shift == 0 ? w : 1.0;
  for (int k = 1; k < 200000; ++k) {
    const double term = pw / std::pow(double(k), s);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) return sum;
    pw *= w;
    if (pw == 0.0) return sum;
  }
  throw ConvergenceError("polylog series did not converge", sum, sum);
}

void check_w(Order s, double w) {
  if (std::isnan(w) || w > 1.0) throw DomainError("polylog: argument must satisfy w <= 1");
  if (w == 1.0 && s != Order::ThreeHalves) throw DomainError("polylog: Li_{1/2} and Li_{-1/2} diverge at w = 1");
}

}  // namespace

mpq_class HermitePoly::evaluate(const mpq_class& y) const {
  mpq_class acc = 0;
  for (int p = degree; p >= 0; --p) acc = acc * y + mpq_class(coeffs[p]);
  return acc;
}

double HermitePoly::evaluate(double y) const {
  mpq_class yq(y);
  return evaluate(yq).get_d();
}

std::vector<HermitePoly> hermite_table(int max_degree) {
  if (max_degree < 0) throw DomainError("hermite: degree must be >= 0");
  std::vector<HermitePoly> h(max_degree + 1);
  h[0] = {0, {mpz_class(1)}};
  if (max_degree >= 1) h[1] = {1, {mpz_class(0), mpz_class(2)}};
  for (int m = 1; m < max_degree; ++m) {
    HermitePoly& next = h[m + 1];
    next.degree = m + 1;
    next.coeffs.assign(m + 2, mpz_class(0));
    for (int p = 0; p <= m; ++p) next.coeffs[p + 1] += 2 * h[m].coeffs[p];
    for (int p = 0; p <= m - 1; ++p) next.coeffs[p] -= 2 * m * h[m - 1].coeffs[p];
  }
  return h;
}

HermitePoly hermite_coeffs(int m) { return hermite_table(m).back(); }

double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
  return boost::math::lgamma(x);
}

double bessel_i_scaled(int nu, double x) {
  if (!(x >= 0)) throw DomainError("bessel_i_scaled: argument must be >= 0");
  gsl_sf_result r;
  int status = 0;
  if (nu == 0) status = gsl_sf_bessel_I0_scaled_e(x, &r);
  else if (nu == 1) status = gsl_sf_bessel_I1_scaled_e(x, &r);
  else throw DomainError("bessel_i_scaled: order must be 0 or 1");
  if (status != GSL_SUCCESS) throw NumericalError(std::string("bessel_i_scaled: ") + gsl_strerror(status));
  return r.val;
}

double c_alpha(double alpha) {
  if (!(alpha >= 0)) throw DomainError("c_alpha: alpha must be >= 0");
  const double x = 0.5 * alpha * alpha;
  return bessel_i_scaled(0, x) + bessel_i_scaled(1, x);
}

double polylog_series(double s, double w) {
  order_of(s);
  if (!(std::abs(w) < 1.0)) throw DomainError("polylog_series: needs |w| < 1");
  return series_sum(s, w, 0);
}

double polylog_integral(double s, double w) {
  const Order o = order_of(s);
  check_w(o, w);
  return polylog_core(o, Arg::from_w(w));
}

double polylog(double s, double w) {
  const Order o = order_of(s);
  check_w(o, w);
  if (std::abs(w) <= 0.5) return series_sum(s, w, 0);
  return polylog_core(o, Arg::from_w(w));
}

double polylog_one_minus_exp(double s, double u) {
  const Order o = order_of(s);
  if (std::isnan(u) || u == kInf) throw DomainError("polylog_one_minus_exp: u must be finite or -inf");
  if (u == -kInf) return polylog(s, 1.0);
  const Arg x = Arg::from_u(u);
  if (std::abs(x.w) <= 0.5) return series_sum(s, x.w, 0);
  return polylog_core(o, x);
}

double polylog_ratio(double s, double w) {
  const Order o = order_of(s);
  check_w(o, w);
  if (std::abs(w) <= 0.5) return series_sum(s, w, 1);
  return polylog_core(o, Arg::from_w(w)) / w;
}

double polylog_ratio_one_minus_exp(double s, double u) {
  const Order o = order_of(s);
  if (std::isnan(u) || std::isinf(u)) throw DomainError("polylog_ratio_one_minus_exp: u must be finite");
  const Arg x = Arg::from_u(u);
  if (std::abs(x.w) <= 0.5) return series_sum(s, x.w, 1);
  return polylog_core(o, x) / x.w;
}

double polylog_zratio(double s, double u) {
  const Order o = order_of(s);
  if (o == Order::ThreeHalves) throw DomainError("polylog_zratio: order must be 1/2 or -1/2");
  if (std::isnan(u) || std::isinf(u)) throw DomainError("polylog_zratio: u must be finite");
  const Arg x = Arg::from_u(u);
  if (std::abs(x.w) <= 0.5) return x.z * series_sum(s, x.w, 1);
  // z Li_s(w)/w with the e^{u} factor cancelled analytically.
  return kTwoOverSqrtPi * sigma_integral(x, o == Order::MinusHalf);
}

double zeta_three_halves() {
  static const double value = [] {
    // sum_{k<N} k^{-3/2}, smallest terms first, plus the Euler-Maclaurin tail from N.
    // Next omitted tail term is B6/6! f^(5)(N) ~ 3e-22 at N = 1000.
    const int N = 1000;
    long double head = 0.0L;
    for (int k = N - 1; k >= 1; --k) head += std::pow(static_cast<long double>(k), -1.5L);
    const long double n = N;
    const long double f = std::pow(n, -1.5L);
    const long double f1 = -1.5L * std::pow(n, -2.5L);
    const long double f3 = -1.5L * 2.5L * 3.5L * std::pow(n, -4.5L);
    const long double tail = 2.0L / std::sqrt(n) + f / 2.0L - f1 / 12.0L + f3 / 720.0L;
    return static_cast<double>(head + tail);
  }();
  return value;
}

mpz_class stirling2(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("stirling2: need 0 <= k <= n");
  std::vector<mpz_class> row(k + 1, mpz_class(0));
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

}  // namespace ginoe
