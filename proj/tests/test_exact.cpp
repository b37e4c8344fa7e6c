#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "ginoe/errors.hpp"
#include "ginoe/exact.hpp"

using namespace ginoe;

namespace {

// det[I + (z-1) M] by LU in long double.
long double det_at(const KernelMatrix& m, long double z) {
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> a(m.n(), m.n());
  for (int j = 0; j < m.n(); ++j)
    for (int k = 0; k < m.n(); ++k) a(j, k) = (j == k ? 1.0L : 0.0L) + (z - 1) * (long double)m(j, k);
  return a.partialPivLu().determinant();
}

}  // namespace

TEST_CASE("n = 1 closed form") {
  for (double tau : {0.0, 0.25, 0.5, 0.75}) {
    const RealEigPmf d = pmf(1, Regime::strong(tau));
    CHECK(d.p(1) == doctest::Approx(std::sqrt((1 + tau) / 2)).epsilon(1e-15));
    CHECK(d.p(0) == doctest::Approx(1 - std::sqrt((1 + tau) / 2)).epsilon(1e-14));
  }
}

TEST_CASE("n = 2 from the expanded 2x2 determinant") {
  const KernelMatrix m = build(2, 0.5, 0);
  const double a = m(0, 0), b = m(0, 1), d = m(1, 1);
  // (1 + (z-1)a)(1 + (z-1)d) - (z-1)^2 b^2 in powers of z
  const double p2 = a * d - b * b;
  const double p1 = a + d - 2 * p2;
  const double p0 = 1 - a - d + p2;
  const RealEigPmf e = pmf_from_kernel(m, Regime::strong(0.5));
  CHECK(e.p(0) == doctest::Approx(p0).epsilon(1e-13));
  CHECK(e.p(1) == doctest::Approx(p1).epsilon(1e-13));
  CHECK(e.p(2) == doctest::Approx(p2).epsilon(1e-13));
}

TEST_CASE("generating polynomial matches the determinant at several z") {
  const KernelMatrix m = build(6, 0.3, 0);
  const RealEigPmf d = pmf_from_kernel(m, Regime::strong(0.3));
  for (double z : {0.0, 0.5, 1.7, 3.0}) {
    long double s = 0, zk = 1;
    for (int k = 0; k <= 6; ++k, zk *= z) s += zk * (long double)d.p(k);
    CHECK((double)s == doctest::Approx((double)det_at(m, z)).epsilon(1e-13));
  }
}

TEST_CASE("log-domain Poisson binomial against enumeration") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::vector<double> p(10);
  for (double& x : p) x = u(rng);
  std::vector<double> ref(11, 0.0);
  for (int mask = 0; mask < 1024; ++mask) {
    double pr = 1;
    int k = 0;
    for (int j = 0; j < 10; ++j) {
      const bool on = mask >> j & 1;
      pr *= on ? p[j] : 1 - p[j];
      k += on;
    }
    ref[k] += pr;
  }
  std::vector<double> ls, lf;
  for (double x : p) {
    ls.push_back(std::log(x));
    lf.push_back(std::log1p(-x));
  }
  const auto lc = log_poisson_binomial(ls, lf);
  for (int k = 0; k <= 10; ++k) CHECK(std::exp(lc[k]) == doctest::Approx(ref[k]).epsilon(1e-13));
  CHECK_THROWS_AS(log_poisson_binomial({0.0}, {}), DomainError);
}

TEST_CASE("normalization at high precision") {
  const RealEigPmf d = pmf(64, Regime::strong(0.5), 256);
  CHECK(d.log_p.size() == 65);
  CHECK(d.precision_bits == 256);
  CHECK(d.scale_check < 1e-20);
  for (double lp : d.log_p) CHECK(std::isfinite(lp));
}

TEST_CASE("weak regime plumbing") {
  const RealEigPmf d = pmf(32, Regime::weak(1.0));
  CHECK(d.log_p.size() == 33);
  CHECK(d.spectrum.eigenvalues.size() == 32);
  CHECK_THROWS_AS(pmf(1, Regime::weak(1.5)), RangeError);
}

TEST_CASE("double and multiprecision paths agree") {
  const RealEigPmf a = pmf(12, Regime::strong(0.5), 0), b = pmf(12, Regime::strong(0.5), 256);
  for (int k = 0; k <= 12; ++k) CHECK(a.log_p[k] == doctest::Approx(b.log_p[k]).epsilon(1e-9));
}

TEST_CASE("trace-log expansion") {
  const RealEigPmf d = pmf(10, Regime::strong(0.25));
  CHECK(trace_log_expansion_check(0.5, d, 200) < 1e-12);
  CHECK(trace_log_expansion_check(1.4, d, 400) < 1e-12);
  CHECK(trace_log_expansion_check(0.9, 8, Regime::weak(1.0), 100) < 1e-12);
  CHECK_THROWS_AS(trace_log_expansion_check(2.5, d, 10), RangeError);
}

TEST_CASE("cumulants from a known law") {
  // Bernoulli(1/2) count scaled by 2: mean 1, variance 1, kappa3 0, kappa4 -2.
  RealEigPmf d;
  d.n = 1;
  d.log_p = {std::log(0.5), std::log(0.5)};
  CHECK(exact_cumulant(1, d) == doctest::Approx(1.0));
  CHECK(exact_cumulant(2, d) == doctest::Approx(1.0));
  CHECK(exact_cumulant(3, d) == doctest::Approx(0.0));
  CHECK(exact_cumulant(4, d) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(exact_cumulant(5, d), DomainError);
  CHECK(generating_log(1.0, d) == doctest::Approx(0.0));
}

TEST_CASE("log-concavity") {
  const RealEigPmf d = pmf(20, Regime::strong(0.0));
  for (std::size_t k = 1; k + 1 < d.log_p.size(); ++k) CHECK(d.log_p[k - 1] + d.log_p[k + 1] < 2 * d.log_p[k]);
}
