#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <gsl/gsl_sf_fermi_dirac.h>
#include <gsl/gsl_sf_zeta.h>

#include "ginoe/errors.hpp"
#include "ginoe/specfn.hpp"

using namespace ginoe;

namespace {

// H_m(y) = m! sum_i (-1)^i (2y)^{m-2i} / (i! (m-2i)!)
std::vector<mpz_class> hermite_explicit(int m) {
  std::vector<mpz_class> c(m + 1, 0);
  mpz_class mf;
  mpz_fac_ui(mf.get_mpz_t(), m);
  for (int i = 0; 2 * i <= m; ++i) {
    mpz_class fi, fr, p2;
    mpz_fac_ui(fi.get_mpz_t(), i);
    mpz_fac_ui(fr.get_mpz_t(), m - 2 * i);
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, m - 2 * i);
    mpz_class term = mf * p2 / (fi * fr);
    c[m - 2 * i] = (i % 2 ? -term : term);
  }
  return c;
}

// Power series for I_nu(x), nu in {0, 1}.
double bessel_series(int nu, double x) {
  double term = std::pow(x / 2, nu) / std::tgamma(nu + 1.0), sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= (x / 2) * (x / 2) / (k * double(k + nu));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Set partitions of {1..n} into k blocks, counted by enumerating restricted growth strings.
long count_partitions(int n, int k) {
  std::vector<int> a(n, 0);
  long count = 0;
  std::function<void(int, int)> rec = [&](int i, int maxv) {
    if (i == n) {
      if (maxv + 1 == k) ++count;
      return;
    }
    for (int v = 0; v <= maxv + 1 && v < k; ++v) {
      a[i] = v;
      rec(i + 1, std::max(maxv, v));
    }
  };
  if (n == 0) return k == 0;
  a[0] = 0;
  rec(1, 0);
  return count;
}

// Li_s(w) for -1 < w < 1 by direct summation in long double.
double li_direct(double s, double w) {
  long double sum = 0, pw = w;
  for (int k = 1; k < 2000000; ++k) {
    const long double t = pw / std::pow((long double)k, (long double)s);
    sum += t;
    if (std::fabs((double)t) < 1e-21) break;
    pw *= w;
  }
  return (double)sum;
}

}  // namespace

TEST_CASE("hermite coefficients agree with the explicit sum") {
  const auto table = hermite_table(40);
  for (int m = 0; m <= 40; ++m) {
    CHECK(table[m].degree == m);
    CHECK(table[m].coeffs == hermite_explicit(m));
  }
  CHECK(hermite_coeffs(5).coeffs == hermite_explicit(5));
  CHECK(hermite_coeffs(3).evaluate(mpq_class(1, 2)) == mpq_class(-5));  // 8y^3 - 12y
  CHECK(hermite_coeffs(4).evaluate(1.5) == doctest::Approx(16 * 5.0625 - 48 * 2.25 + 12));
}

TEST_CASE("log_gamma") {
  for (double x : {0.5, 1.0, 2.5, 10.0, 171.3, 1e5}) CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("scaled Bessel functions against the power series") {
  for (double x : {1e-3, 0.5, 1.0, 4.5, 20.0})
    for (int nu : {0, 1}) CHECK(bessel_i_scaled(nu, x) == doctest::Approx(std::exp(-x) * bessel_series(nu, x)).epsilon(1e-13));
  CHECK_THROWS_AS(bessel_i_scaled(2, 1.0), DomainError);
}

TEST_CASE("c_alpha") {
  CHECK(c_alpha(1e-8) == doctest::Approx(1.0).epsilon(1e-14));
  for (double a : {0.3, 1.0, 3.0}) {
    const double x = a * a / 2;
    CHECK(c_alpha(a) == doctest::Approx(std::exp(-x) * (bessel_series(0, x) + bessel_series(1, x))).epsilon(1e-13));
  }
}

TEST_CASE("polylog on the negative axis agrees with Fermi-Dirac integrals") {
  // F_j(x) = -Li_{j+1}(-e^x)
  for (double x : {-30.0, -3.0, -0.7, 0.0, 0.3, 2.0, 10.0, 50.0, 300.0}) {
    const double w = -std::exp(x);
    CHECK(polylog(1.5, w) == doctest::Approx(-gsl_sf_fermi_dirac_half(x)).epsilon(1e-13));
    CHECK(polylog(0.5, w) == doctest::Approx(-gsl_sf_fermi_dirac_mhalf(x)).epsilon(1e-13));
    CHECK(polylog_one_minus_exp(1.5, std::log1p(std::exp(x))) ==
          doctest::Approx(-gsl_sf_fermi_dirac_half(x)).epsilon(1e-12));
    // Li_{-1/2} is the x-derivative of Li_{1/2}(-e^x).
    const double h = 1e-4 * std::max(1.0, std::abs(x));
    const double d = -(gsl_sf_fermi_dirac_mhalf(x + h) - gsl_sf_fermi_dirac_mhalf(x - h)) / (2 * h);
    CHECK(polylog(-0.5, w) == doctest::Approx(d).epsilon(1e-6));
  }
}

TEST_CASE("polylog inside the unit disc agrees with direct summation") {
  for (double w : {-0.9, -0.4, -1e-3, 1e-3, 0.3, 0.6, 0.9})
    for (double s : {1.5, 0.5, -0.5}) {
      CHECK(polylog(s, w) == doctest::Approx(li_direct(s, w)).epsilon(1e-13));
      CHECK(polylog_integral(s, w) == doctest::Approx(li_direct(s, w)).epsilon(1e-11));
      CHECK(polylog_series(s, w) == doctest::Approx(li_direct(s, w)).epsilon(1e-14));
    }
}

TEST_CASE("series and integral agree across the crossover") {
  for (double w : {-0.55, -0.5, -0.45, 0.45, 0.5, 0.55})
    for (double s : {1.5, 0.5, -0.5}) CHECK(polylog_series(s, w) == doctest::Approx(polylog_integral(s, w)).epsilon(1e-12));
}

TEST_CASE("polylog near w = 1") {
  CHECK(polylog(1.5, 1.0) == doctest::Approx(gsl_sf_zeta(1.5)).epsilon(1e-14));
  CHECK(zeta_three_halves() == doctest::Approx(gsl_sf_zeta(1.5)).epsilon(4e-15));
  // Li_{3/2}(1 - e^u) - zeta(3/2) ~ -2 sqrt(pi) e^{u/2} as u -> -inf
  const double u = -40;
  CHECK((polylog_one_minus_exp(1.5, u) - zeta_three_halves()) / std::exp(u / 2) ==
        doctest::Approx(-2 * std::sqrt(std::numbers::pi)).epsilon(1e-6));
  CHECK_THROWS_AS(polylog(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(polylog(1.5, 1.5), DomainError);
  CHECK_THROWS_AS(polylog(2.0, 0.5), DomainError);
}

TEST_CASE("ratios are continuous through w = 0") {
  for (double s : {1.5, 0.5, -0.5}) {
    CHECK(polylog_ratio(s, 0.0) == 1.0);
    CHECK(polylog_ratio(s, 1e-9) == doctest::Approx(1.0 + 1e-9 / std::pow(2.0, s)).epsilon(1e-15));
    CHECK(polylog_ratio_one_minus_exp(s, 0.0) == 1.0);
    CHECK(polylog_ratio_one_minus_exp(s, 0.2) == doctest::Approx(polylog_ratio(s, -std::expm1(0.2))).epsilon(1e-14));
  }
}

TEST_CASE("zratio stays finite for large tilts") {
  for (double u : {-5.0, -0.1, 0.0, 0.3, 4.0})
    for (double s : {0.5, -0.5}) {
      const double z = std::exp(u), w = 1 - z;
      const double ref = w == 0 ? 1.0 : z * polylog(s, w) / w;
      CHECK(polylog_zratio(s, u) == doctest::Approx(ref).epsilon(1e-12));
    }
  // z Li_{1/2}(1-z)/(1-z) ~ (2/sqrt(pi)) sqrt(u) for large u
  const double big = polylog_zratio(0.5, 2000.0);
  CHECK(std::isfinite(big));
  CHECK(big / (2 / std::sqrt(std::numbers::pi) * std::sqrt(2000.0)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("integral representation of Li_{3/2} at w = -1") {
  boost::math::quadrature::exp_sinh<double> es;
  const double ref = -2 / std::sqrt(std::numbers::pi) * es.integrate([](double t) { return std::log1p(std::exp(-t * t)); });
  CHECK(polylog(1.5, -1.0) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("stirling numbers count set partitions") {
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) CHECK(stirling2(n, k) == count_partitions(n, k));
  CHECK(stirling2(25, 7) == mpz_class("227832482998716310"));
  CHECK_THROWS_AS(stirling2(3, 5), DomainError);
  CHECK_THROWS_AS(stirling2(-1, 0), DomainError);
}

TEST_CASE("stirling numbers expand powers into falling factorials") {
  for (int n = 0; n <= 8; ++n)
    for (long x = 1; x <= 5; ++x) {
      mpz_class sum = 0;
      for (int k = 0; k <= n; ++k) {
        mpz_class falling = 1;
        for (int i = 0; i < k; ++i) falling *= x - i;
        sum += stirling2(n, k) * falling;
      }
      mpz_class power;
      mpz_ui_pow_ui(power.get_mpz_t(), x, n);
      CHECK(sum == power);
    }
}
