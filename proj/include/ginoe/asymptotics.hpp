#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ginoe/regime.hpp"

namespace ginoe {

struct OutputHeader;

// Cumulant generating densities (Psi) and their tilted means (Phi), as functions of z >= 0.
double psi_s(double z, double tau);
double psi_w(double z, double alpha);
double psi(double z, const Regime& regime);
double phi_big_s(double z, double tau);
double phi_big_w(double z, double alpha);
double phi_big(double z, const Regime& regime);

// Same functions at z = e^u. u may be -inf; large positive u is fine (no e^u is ever formed).
double psi_u(double u, const Regime& regime);
double phi_big_u(double u, const Regime& regime);
double phi_big_du(double u, const Regime& regime);  // d/du Phi(e^u) > 0

// x = N / c_n with c_n = sqrt(2n) (strong) or 2n (weak).
struct RateEval {
  double x = 0.0;
  double u_star = 0.0;
  double phi = 0.0;
  Regime regime = Regime::strong(0.0);
};

// Open interval of admissible x: (0, inf) strong, (0, 1) weak.
struct Interval {
  double lo, hi;
};
Interval rate_domain(const Regime& regime);

RateEval rate(double x, const Regime& regime);
// OpenMP over grid points; rate_curve_serial is the single-threaded reference.
std::vector<RateEval> rate_curve(const std::vector<double>& xs, const Regime& regime);
std::vector<RateEval> rate_curve_serial(const std::vector<double>& xs, const Regime& regime);

struct Minimiser {
  double x_min;
  double curvature;  // phi''(x_min)
};
Minimiser minimiser(const Regime& regime);
// Root of the stationarity condition u*(x) = 0, then a central second difference of rate().
Minimiser minimiser_numeric(const Regime& regime, double h = 1e-4);
double typical_value(const Regime& regime);

// Leading coefficients of E N and Var N over c_n.
double mean_coefficient(const Regime& regime);
double variance_coefficient(const Regime& regime);

// lim Tr(M_n^k) / c_n
double trace_power_limit(int k, const Regime& regime);

struct LimitCumulants {
  int ell;
  double value;  // lim kappa_ell(N) / c_n
};
LimitCumulants limiting_cumulant(int ell, const Regime& regime);

// |phi_s(x_s(t1) x; t1)/x_s(t1) - phi_s(x_s(t2) x; t2)/x_s(t2)|
double universality_gap(double x, double tau1, double tau2);

enum class RightTail {
  CubicCoefficient,  // phi ~ right * x^3 as x -> inf
  LimitAtOne,        // phi -> right as x -> 1-
};

struct TailConstants {
  double left;  // lim_{x->0+} phi(x) = -Psi(0)
  double right;
  RightTail right_kind;
};
TailConstants tail_constants(const Regime& regime);

// Columns x, u_star, phi.
void write_rate_csv(std::ostream& os, const std::vector<RateEval>& curve, const OutputHeader& header);
// Curve plus minimiser, tail constants and the first four limiting cumulants.
void write_rate_json(std::ostream& os, const std::vector<RateEval>& curve, const Regime& regime,
                     const OutputHeader& header);

}  // namespace ginoe
