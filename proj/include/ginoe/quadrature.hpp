#pragma once

#include <functional>
#include <vector>

namespace ginoe {

enum class RuleKind { Semicircle, GaussLegendre, GaussHalfLine };

// Semicircle: int_0^1 f(s) sqrt(1-s^2) ds ~ sum w_i f(s_i), exact for even polynomials of degree < 2*order.
// GaussLegendre: int_{-1}^{1} f.
// GaussHalfLine: int_0^inf f(t) e^{-t^2} dt, exact for f a polynomial in t^2 of degree < order.
struct QuadratureRule {
  RuleKind kind = RuleKind::GaussLegendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;

  double apply(const std::function<double(double)>& f) const;
};

QuadratureRule gauss_legendre_rule(int order);
QuadratureRule semicircle_rule(int order);  // order must be even; yields order/2 nodes in (0,1)
QuadratureRule gauss_half_line_rule(int order);

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int initial_order = 8;
  int max_order = 1 << 15;
};

// Order doubling on the semicircle rule until two successive values agree.
double quad_semicircle(const std::function<double(double)>& f, const QuadOptions& opts = {});

struct AdaptiveOptions {
  double rel_tol = 1e-13;
  int max_depth = 14;  // panel budget is 2^max_depth
};

// Adaptive Gauss-Kronrod over [a,b] split at the given interior breakpoints.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> breakpoints = {}, const AdaptiveOptions& opts = {});

// int_0^1 f(s) sqrt(1-s^2) ds through s = sin(theta), adaptive, with breakpoints in s.
double integrate_semicircle(const std::function<double(double)>& f, std::vector<double> breakpoints = {},
                            const AdaptiveOptions& opts = {});

}  // namespace ginoe
