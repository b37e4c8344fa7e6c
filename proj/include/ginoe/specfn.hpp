#pragma once

#include <vector>

#include <gmpxx.h>

namespace ginoe {

// Physicists' Hermite polynomial, coeffs[p] multiplies y^p.
struct HermitePoly {
  int degree = 0;
  std::vector<mpz_class> coeffs;

  mpq_class evaluate(const mpq_class& y) const;
  double evaluate(double y) const;
};

HermitePoly hermite_coeffs(int m);

// H_0 .. H_max_degree in one pass of the recurrence.
std::vector<HermitePoly> hermite_table(int max_degree);

double log_gamma(double x);

// e^{-x} I_nu(x) for nu in {0, 1}.
double bessel_i_scaled(int nu, double x);

// Li_s(w) for s in {3/2, 1/2, -1/2} and real w <= 1 (w < 1 unless s = 3/2).
double polylog(double s, double w);

// Li_s(1 - e^u): same function, but parametrized so that w -> 1 (u -> -inf) keeps full accuracy.
double polylog_one_minus_exp(double s, double u);

// Li_s(w)/w, continuous through w = 0 where it equals 1.
double polylog_ratio(double s, double w);

// Li_s(1 - e^u)/(1 - e^u), continuous through u = 0.
double polylog_ratio_one_minus_exp(double s, double u);

// z Li_s(1-z)/(1-z) at z = e^u for s in {1/2, -1/2}; finite for every real u (no e^u overflow).
double polylog_zratio(double s, double u);

// Direct power series; requires |w| < 1. Exposed for cross-checks near the crossover.
double polylog_series(double s, double w);

// Integral representation for any admissible w.
double polylog_integral(double s, double w);

// zeta(3/2) by partial sum plus Euler-Maclaurin tail; computed once.
double zeta_three_halves();

mpz_class stirling2(int n, int k);

// c(alpha) = e^{-alpha^2/2} (I_0 + I_1)(alpha^2/2).
double c_alpha(double alpha);

}  // namespace ginoe
