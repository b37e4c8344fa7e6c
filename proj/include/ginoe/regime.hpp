#pragma once

#include <string>

#include <gmpxx.h>

namespace ginoe {

enum class RegimeKind { Strong, Weak };

// Strong asymmetry keeps tau fixed; weak asymmetry sets tau = 1 - alpha^2/(2n) at kernel side n.
class Regime {
 public:
  static Regime strong(double tau);
  static Regime weak(double alpha);

  RegimeKind kind() const { return kind_; }
  bool is_strong() const { return kind_ == RegimeKind::Strong; }
  bool is_weak() const { return kind_ == RegimeKind::Weak; }
  double tau() const;    // strong only
  double alpha() const;  // weak only

  // Throws RangeError if the regime cannot be realized at kernel side n (weak with alpha^2 >= 2n).
  void check_at(int n) const;
  double tau_at(int n) const;
  mpq_class tau_exact_at(int n) const;  // the rational the kernel is built from
  double speed(int n) const;            // sqrt(2n) strong, 2n weak

  std::string describe() const;  // "tau=0.5" or "alpha=1"

 private:
  Regime(RegimeKind k, double p) : kind_(k), param_(p) {}
  RegimeKind kind_;
  double param_;
};

}  // namespace ginoe
