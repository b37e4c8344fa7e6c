#include "ginoe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <numbers>
#include <queue>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ginoe/errors.hpp"

namespace ginoe {

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule gauss_legendre_rule(int order) {
  if (order < 1) throw DomainError("gauss_legendre_rule: order must be >= 1");
  QuadratureRule r;
  r.kind = RuleKind::GaussLegendre;
  r.order = order;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[order - 1 - i] = x;
    r.weights[i] = w;
    r.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) r.nodes[order / 2] = 0.0;
  return r;
}

QuadratureRule semicircle_rule(int order) {
  if (order < 4 || order % 2 != 0) throw DomainError("semicircle_rule: order must be even and >= 4");
  // Gauss-Chebyshev of the second kind on [-1,1], folded onto [0,1] (even integrands only).
  QuadratureRule r;
  r.kind = RuleKind::Semicircle;
  r.order = order;
  const double h = std::numbers::pi / (order + 1);
  for (int i = order / 2; i >= 1; --i) {
    const double s = std::sin(i * h);
    r.nodes.push_back(std::cos(i * h));
    r.weights.push_back(h * s * s);  // half of 2*h*sin^2 from the mirrored node pair
  }
  return r;
}

QuadratureRule gauss_half_line_rule(int order) {
  if (order < 1) throw DomainError("gauss_half_line_rule: order must be >= 1");
  // Golub-Welsch for generalized Laguerre with exponent -1/2, then a = t^2.
  const double alpha = -0.5;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
  for (int k = 0; k < order; ++k) {
    J(k, k) = 2.0 * k + alpha + 1.0;
    if (k + 1 < order) {
      const double b = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
      J(k, k + 1) = b;
      J(k + 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r;
  r.kind = RuleKind::GaussHalfLine;
  r.order = order;
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    r.nodes.push_back(std::sqrt(es.eigenvalues()(i)));
    r.weights.push_back(0.5 * mu0 * v0 * v0);
  }
  return r;
}

double quad_semicircle(const std::function<double(double)>& f, const QuadOptions& opts) {
  if (opts.initial_order < 4) throw DomainError("quad_semicircle: initial order must be >= 4");
  int order = opts.initial_order + (opts.initial_order % 2);
  double before = std::nan("");
  double prev = semicircle_rule(order).apply(f);
  while (order * 2 <= opts.max_order) {
    order *= 2;
    const double cur = semicircle_rule(order).apply(f);
    if (std::abs(cur - prev) <= std::max(opts.rel_tol * std::abs(cur), opts.abs_tol)) return cur;
    before = prev;
    prev = cur;
  }
  throw ConvergenceError("quad_semicircle: no agreement up to order " + std::to_string(order), before, prev);
}

double integrate(const std::function<double(double)>& f, double a, double b, std::vector<double> breakpoints,
                 const AdaptiveOptions& opts) {
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw DomainError("integrate: need a <= b");
  }
  std::vector<double> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double c : breakpoints)
    if (c > a && c < b && c > cuts.back()) cuts.push_back(c);
  cuts.push_back(b);

  // Global adaptivity: always bisect the panel with the largest error estimate. Boost's fixed
  // 31-point rule is used per panel; its error is reported on [-1,1] and rescaled here.
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  struct Panel {
    double a, b, value, error, l1;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  auto eval = [&](double lo, double hi) {
    double err = 0.0, l1 = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err, &l1);
    return Panel{lo, hi, v, err * 0.5 * (hi - lo), l1};
  };
  std::priority_queue<Panel> heap;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) heap.push(eval(cuts[i], cuts[i + 1]));
  const std::size_t max_panels = std::size_t(1) << std::min(opts.max_depth, 24);
  auto totals = [&] {
    double v = 0.0, e = 0.0, l = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      l += copy.top().l1;
      copy.pop();
    }
    return std::array<double, 3>{v, e, l};
  };
  const auto start = totals();
  double err = start[1], l1 = start[2];
  while (err > opts.rel_tol * l1 && err > 1e-300 && heap.size() < max_panels) {
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const Panel left = eval(worst.a, mid), right = eval(mid, worst.b);
    heap.push(left);
    heap.push(right);
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
  }
  const auto t = totals();
  if (!std::isfinite(t[0])) throw NumericalError("integrate: non-finite integral");
  if (t[1] > 10.0 * opts.rel_tol * t[2] && t[1] > 1e-300) {
    throw ConvergenceError("integrate: adaptive Gauss-Kronrod missed tolerance", t[0] - t[1], t[0]);
  }
  return t[0];
}

double integrate_semicircle(const std::function<double(double)>& f, std::vector<double> breakpoints,
                            const AdaptiveOptions& opts) {
  std::vector<double> thetas;
  for (double s : breakpoints)
    if (s > 0.0 && s < 1.0) thetas.push_back(std::asin(s));
  auto g = [&](double th) {
    const double c = std::cos(th);
    return f(std::sin(th)) * c * c;
  };
  return integrate(g, 0.0, std::numbers::pi / 2, thetas, opts);
}

}  // namespace ginoe
