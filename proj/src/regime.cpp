#include "ginoe/regime.hpp"

#include <cmath>

#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"

namespace ginoe {

Regime Regime::strong(double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) throw RangeError("tau must lie in [0,1)", 0.0, 1.0);
  return Regime(RegimeKind::Strong, tau);
}

Regime Regime::weak(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive and finite");
  return Regime(RegimeKind::Weak, alpha);
}

double Regime::tau() const {
  if (!is_strong()) throw UsageError("tau() requested from a weak regime");
  return param_;
}

double Regime::alpha() const {
  if (!is_weak()) throw UsageError("alpha() requested from a strong regime");
  return param_;
}

void Regime::check_at(int n) const {
  if (n < 1) throw DomainError("kernel side n must be >= 1");
  if (is_weak() && !(param_ * param_ < 2.0 * n)) {
    throw RangeError("weak regime needs alpha^2 < 2n = " + std::to_string(2 * n) + ", got alpha=" +
                         format_double(param_),
                     0.0, std::sqrt(2.0 * n));
  }
}

mpq_class Regime::tau_exact_at(int n) const {
  check_at(n);
  if (is_strong()) return mpq_class(param_);
  mpq_class a(param_);
  mpq_class t = 1 - a * a / (2 * n);
  t.canonicalize();
  return t;
}

double Regime::tau_at(int n) const { return tau_exact_at(n).get_d(); }

double Regime::speed(int n) const {
  if (n < 1) throw DomainError("kernel side n must be >= 1");
  return is_strong() ? std::sqrt(2.0 * n) : 2.0 * n;
}

std::string Regime::describe() const {
  return (is_strong() ? "tau=" : "alpha=") + format_double(param_);
}

}  // namespace ginoe
