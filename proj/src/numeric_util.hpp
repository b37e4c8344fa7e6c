#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

// Small stable primitives shared by the special-function and asymptotics code.
namespace ginoe::detail {

inline double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(expm1(a)) for a > 0 without overflow.
inline double log_expm1(double a) { return a > 1.0 ? a + std::log(-std::expm1(-a)) : std::log(std::expm1(a)); }

inline double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

// The point w = 1 - e^u with every representation we need kept accurate.
struct OneMinusExp {
  double u;  // may be -inf (w = 1)
  double z;  // e^u
  double w;  // 1 - z
  double v;  // log(-w) when w < 0

  static OneMinusExp from_u(double u) {
    OneMinusExp a{u, std::exp(u), -std::expm1(u), 0.0};
    if (u > 0) a.v = u > 1.0 ? u + std::log(-std::expm1(-u)) : std::log(std::expm1(u));
    return a;
  }
  static OneMinusExp from_w(double w) {
    if (w == 1.0) return {-std::numeric_limits<double>::infinity(), 0.0, 1.0, 0.0};
    OneMinusExp a{std::log1p(-w), 1.0 - w, w, 0.0};
    if (w < 0) a.v = std::log(-w);
    return a;
  }

  // log(1 - w e^{-a}), a >= 0
  double log_one_minus_wq(double a) const {
    const double q = std::exp(-a);
    if (std::abs(w) * q < 0.5) return std::log1p(-w * q);
    if (w > 0) return std::log(-std::expm1(-a) + z * q);
    return (v - a) + std::log1p(std::exp(a - v));
  }

  // 1 - w e^{-a}
  double one_minus_wq(double a) const {
    const double q = std::exp(-a);
    if (w > 0) return -std::expm1(-a) + z * q;
    return 1.0 - w * q;
  }
};

}  // namespace ginoe::detail
