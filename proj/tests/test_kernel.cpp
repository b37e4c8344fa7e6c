#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ginoe/errors.hpp"
#include "ginoe/jacobi.hpp"
#include "ginoe/kernel.hpp"
#include "ginoe/specfn.hpp"

using namespace ginoe;

namespace {

// Entry (j,k), 0-based, from the Gaussian-weighted overlap of two Hermite polynomials, expanded
// into monomials and integrated term by term in exact rationals:
//   (2 pi)^{-1/2} (t/2)^{j+k} / sqrt((2j)!(2k)!) int e^{-x^2/(1+t)} H_2j(x/sqrt(2t)) H_2k(x/sqrt(2t)) dx.
// Returns R with entry = sqrt((1+t)/2) R / sqrt((2j)!(2k)!).
mpq_class overlap_rational(int j, int k, const mpq_class& t) {
  const auto hj = hermite_coeffs(2 * j).coeffs, hk = hermite_coeffs(2 * k).coeffs;
  mpq_class sum = 0;
  const mpq_class two_t = 2 * t, one_plus = 1 + t;
  for (std::size_t a = 0; a < hj.size(); a += 2)
    for (std::size_t b = 0; b < hk.size(); b += 2) {
      const unsigned m = static_cast<unsigned>((a + b) / 2);
      // int e^{-x^2/c} x^{2m} dx = sqrt(pi) (2m-1)!!/2^m c^{m+1/2}; sqrt(pi c) moves to the prefactor.
      mpz_class dfact = 1;
      for (unsigned i = 1; i < 2 * m; i += 2) dfact *= i;
      mpq_class term = mpq_class(hj[a] * hk[b]) * dfact;
      mpq_class pw = 1;
      for (unsigned i = 0; i < m; ++i) pw *= one_plus / (2 * two_t);
      sum += term * pw;
    }
  mpq_class scale = 1;
  for (int i = 0; i < j + k; ++i) scale *= t / 2;
  return sum * scale;
}

double factorial_sqrt(int j, int k) {
  return std::exp(0.5 * (std::lgamma(2 * j + 1.0) + std::lgamma(2 * k + 1.0)));
}

double log_det(const KernelMatrix& m) {
  Eigen::MatrixXd a(m.n(), m.n());
  for (int j = 0; j < m.n(); ++j)
    for (int k = 0; k < m.n(); ++k) a(j, k) = m(j, k);
  return std::log(a.ldlt().vectorD().prod());
}

double log_abs(const mpz_class& z) {
  long e;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::abs(m)) + e * std::log(2.0);
}

// log det of the n x n kernel by rational Gaussian elimination on R.
double exact_log_det(int n, const mpq_class& t) {
  std::vector<std::vector<mpq_class>> r(n, std::vector<mpq_class>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) r[j][k] = overlap_rational(j, k, t);
  mpq_class det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (r[p][c] == 0) ++p;
    if (p != c) std::swap(r[p], r[c]), det = -det;
    det *= r[c][c];
    for (int i = c + 1; i < n; ++i) {
      const mpq_class f = r[i][c] / r[c][c];
      for (int k = c; k < n; ++k) r[i][k] -= f * r[c][k];
    }
  }
  double out = log_abs(det.get_num()) - log_abs(det.get_den()) + 0.5 * n * std::log((1 + t.get_d()) / 2);
  for (int j = 0; j < n; ++j) out -= std::lgamma(2 * j + 1.0);
  return out;
}

}  // namespace

TEST_CASE("entries match the exact-rational overlap formula") {
  for (const mpq_class t : {mpq_class(1, 2), mpq_class(1, 4), mpq_class(3, 7), mpq_class(9, 10)}) {
    const KernelMatrix m = build(12, t, 0);
    for (int j = 0; j < 12; ++j)
      for (int k = 0; k < 12; ++k) {
        const double ref = std::sqrt((1 + t.get_d()) / 2) * overlap_rational(j, k, t).get_d() / factorial_sqrt(j, k);
        CHECK(m(j, k) == doctest::Approx(ref).epsilon(1e-13));
      }
  }
}

TEST_CASE("high-precision entries keep far more digits") {
  const mpq_class t(1, 2);
  const KernelMatrix m = build(6, t, 512);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      Float1024 ref;
      mpfr_set_q(ref.backend().data(), overlap_rational(j, k, t).get_mpq_t(), MPFR_RNDN);
      Float1024 fj = 1, fk = 1;
      for (int i = 2; i <= 2 * j; ++i) fj *= i;
      for (int i = 2; i <= 2 * k; ++i) fk *= i;
      ref *= sqrt(Float1024(3) / 4) / sqrt(fj * fk);
      CHECK(abs(m.high_precision(j, k) - ref) / abs(ref) < Float1024("1e-290"));
    }
}

TEST_CASE("tau = 0 reduces to double factorials") {
  const KernelMatrix m = build(10, 0.0, 0);
  for (int j = 0; j < 10; ++j)
    for (int k = 0; k < 10; ++k) {
      double df = 1;
      for (int i = 1; i < 2 * (j + k); i += 2) df *= i;
      const double ref = df / std::pow(2.0, j + k + 0.5) / factorial_sqrt(j, k);
      CHECK(m(j, k) == doctest::Approx(ref).epsilon(1e-14));
    }
  CHECK(entry(1, 1, 10, 0.0) == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("symmetry and exact numerators") {
  const KernelMatrix m = build(20, mpq_class(2, 3));
  for (int j = 0; j < 20; ++j)
    for (int k = 0; k < 20; ++k) {
      CHECK(m.numerator(j, k) == m.numerator(k, j));
      CHECK(m(j, k) == m(k, j));
    }
  CHECK(m.precision_bits() == 256);
  CHECK(m.tau_exact() == mpq_class(2, 3));
}

TEST_CASE("parallel build equals the serial reference") {
  const KernelMatrix a = build(40, mpq_class(1, 2), 256), b = build_serial(40, mpq_class(1, 2), 256);
  for (int j = 0; j < 40; ++j)
    for (int k = 0; k < 40; ++k) {
      CHECK(a.numerator(j, k) == b.numerator(j, k));
      CHECK(a.high_precision(j, k) == b.high_precision(j, k));
    }
}

TEST_CASE("regime plumbing") {
  const KernelMatrix w = build(32, Regime::weak(1.0));
  CHECK(w.tau_exact() == mpq_class(63, 64));
  CHECK_THROWS_AS(build(2, Regime::weak(2.0)), RangeError);
  CHECK_THROWS_AS(build(4, 1.0), RangeError);
  CHECK_THROWS_AS(build(4, 0.5, 100), PrecisionError);
  CHECK_THROWS_AS(build(0, 0.5), DomainError);
  CHECK_THROWS_AS(entry(0, 1, 4, 0.5), DomainError);
}

TEST_CASE("spectrum lies in (0,1) with small residuals") {
  for (double tau : {0.0, 0.5, 0.9}) {
    const KernelMatrix m = build(24, tau);
    const Spectrum s = spectrum(m);
    CHECK(s.eigenvalues.size() == 24);
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      CHECK(s.eigenvalues[i] > 0);
      CHECK(s.complements[i] > 0);
      if (i) CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
    }
    CHECK(s.residual < 1e-60);
  }
}

TEST_CASE("log determinant against exact elimination") {
  const int n = 16;
  const mpq_class t(1, 2);
  const double ref = exact_log_det(n, t);
  CHECK(log_det(build(n, t, 0)) == doctest::Approx(ref).epsilon(1e-9));
  const Spectrum s = spectrum(build(n, t, 256));
  double ld = 0;
  for (double l : s.eigenvalues) ld += std::log(l);
  CHECK(ld == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("Jacobi orderings agree") {
  const KernelMatrix m = build(30, 0.5, 256);
  const Spectrum a = spectrum(m, EigenMethod::JacobiCyclic), b = spectrum(m, EigenMethod::JacobiRoundRobin);
  for (int i = 0; i < 30; ++i) CHECK(a.eigenvalues[i] == doctest::Approx(b.eigenvalues[i]).epsilon(1e-15));
  CHECK(a.sweeps > 0);
  const Spectrum d = spectrum(build(8, 0.5, 0));
  const Spectrum e = spectrum(build(8, 0.5, 0), EigenMethod::JacobiCyclic);
  for (int i = 0; i < 8; ++i) CHECK(d.eigenvalues[i] == doctest::Approx(e.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("jacobi_eigen on a small SPD matrix") {
  const std::vector<double> a{4, 1, 0, 1, 3, 1, 0, 1, 2};
  for (auto ord : {JacobiOrdering::Cyclic, JacobiOrdering::RoundRobin}) {
    const SymEigen<double> r = jacobi_eigen(a, 3, ord);
    Eigen::Matrix3d A;
    A << 4, 1, 0, 1, 3, 1, 0, 1, 2;
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d v(r.vectors[3 * j], r.vectors[3 * j + 1], r.vectors[3 * j + 2]);
      CHECK((A * v - r.values[j] * v).norm() < 1e-13);
    }
    CHECK(r.values[0] + r.values[1] + r.values[2] == doctest::Approx(9.0));
  }
  CHECK_THROWS_AS(jacobi_eigen(std::vector<double>{1, 2, 2, 1}, 2, JacobiOrdering::Cyclic), NumericalError);
}

TEST_CASE("trace powers") {
  const KernelMatrix m = build(10, 0.25);
  double tr = 0;
  for (int j = 0; j < 10; ++j) tr += m(j, j);
  CHECK(trace_power(m, 1) == doctest::Approx(tr).epsilon(1e-14));
  double tr2 = 0;
  for (int j = 0; j < 10; ++j)
    for (int k = 0; k < 10; ++k) tr2 += m(j, k) * m(k, j);
  CHECK(trace_power(m, 2) == doctest::Approx(tr2).epsilon(1e-13));
  CHECK_THROWS_AS(trace_power(m, 0), DomainError);
}
