#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "ginoe/asymptotics.hpp"
#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"
#include "ginoe/profile.hpp"

using namespace ginoe;

TEST_CASE("phi_n on simple polynomials") {
  const CoeffPoly lin = CoeffPoly::external({std::log(0.5), std::log(0.5)}, 1.0, true);
  CHECK(phi_n(1.0, lin) == doctest::Approx(0.5));
  const CoeffPoly b = CoeffPoly::binomial(30);
  for (double z : {0.1, 1.0, 7.0}) CHECK(phi_n(z, b) == doctest::Approx(z / (z + 1)).epsilon(1e-13));
  CHECK_THROWS_AS(phi_n(0.0, b), DomainError);
}

TEST_CASE("phi_n increases for the ensemble polynomial") {
  const CoeffPoly p = CoeffPoly::from_pmf(pmf(4, Regime::strong(0.0)));
  double prev = 0;
  for (int i = 0; i < 50; ++i) {
    const double v = phi_n(std::exp(-5 + 10.0 * i / 49), p);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("theta_star") {
  const CoeffPoly b = CoeffPoly::binomial(200);
  CHECK(theta_star(100, b) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(theta_star(50, b) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK_THROWS_AS(theta_star(0, b), RangeError);
  CHECK_THROWS_AS(theta_star(200, b), RangeError);
  const CoeffPoly p = CoeffPoly::from_pmf(pmf(16, Regime::weak(1.0)));
  double prev = 0;
  for (int k = 1; k < 16; ++k) {
    const double t = theta_star(k, p);
    CHECK(t > prev);
    CHECK(phi_n(t, p) == doctest::Approx(k / p.speed).epsilon(1e-12));
    prev = t;
  }
}

TEST_CASE("tilted variance") {
  CHECK(tilted_variance(1.0, std::vector<double>{1.0}) == doctest::Approx(0.25));
  CHECK(tilted_variance(1.0, std::vector<double>(12, 1.0)) == doctest::Approx(3.0));
  CHECK(tilted_variance(1.0, CoeffPoly::binomial(12)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(tilted_variance(0.0, std::vector<double>{1.0}), DomainError);
  const CoeffPoly p = CoeffPoly::from_pmf(pmf(8, Regime::strong(0.0)));
  for (int k : {3, 4, 5}) {
    const double v = tilted_variance(theta_star(k, p), p) / p.speed;
    CHECK(v >= 0.01);
    CHECK(v <= 100);
  }
}

TEST_CASE("roots reproduce the coefficients") {
  for (const Regime& r : {Regime::strong(0.5), Regime::weak(1.0)}) {
    const RealEigPmf d = pmf(20, r);
    const CoeffPoly p = CoeffPoly::from_pmf(d);
    const auto t = tilted_log_pmf(1.0, p);
    for (int k = 0; k <= 20; ++k) CHECK(t[k] == doctest::Approx(p.log_coeffs[k]).epsilon(1e-12));
  }
}

TEST_CASE("three-term decomposition is exact") {
  for (const Regime& r : {Regime::strong(0.0), Regime::weak(1.0)})
    for (int n : {8, 32}) {
      const CoeffPoly p = CoeffPoly::from_pmf(pmf(n, r));
      for (int k = 1; k < n; ++k) {
        const TiltingTerms t = tilting_terms(k, p);
        CHECK(std::abs(t.residual()) <= 1e-12 * std::max(1.0, std::abs(t.log_a)));
        // g_n(k/c_n) differs from log a/c_n by exactly the tilted log-probability.
        const double g_n = (-t.k_log_theta + t.log_p_theta) / p.speed;
        CHECK(p.log_coeffs[k] / p.speed - g_n == doctest::Approx(t.log_tilted / p.speed).epsilon(1e-10).scale(1));
      }
    }
}

TEST_CASE("local CLT factor") {
  const CoeffPoly p = CoeffPoly::from_pmf(pmf(64, Regime::strong(0.5)));
  const int k = static_cast<int>(std::lround(0.6 * typical_value(Regime::strong(0.5)) * p.speed / 2));
  const double f = tilting_terms(k, p).local_clt;
  CHECK(f > 0.5);
  CHECK(f < 1.5);
}

TEST_CASE("binomial oracle") {
  const double s200 = profile_report(CoeffPoly::binomial(200), entropy_profile, {0.2, 0.8}).sup_error;
  const double s400 = profile_report(CoeffPoly::binomial(400), entropy_profile, {0.2, 0.8}).sup_error;
  CHECK(s200 <= 0.02);
  CHECK(s400 < s200);
}

TEST_CASE("weak profile sharpens with n") {
  const Regime r = Regime::weak(1.0);
  double prev = INFINITY;
  for (int n : {32, 64, 128}) {
    const double s = regime_profile(pmf(n, r), {0.3, 0.9}).sup_error;
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("report structure") {
  const RealEigPmf d = pmf(16, Regime::strong(0.5));
  const Window w = default_window(d.regime, 16);
  CHECK(w.a == doctest::Approx(0.25 * typical_value(d.regime)));
  const ProfileReport r = regime_profile(d, w);
  double sup = 0;
  for (const ProfileRow& row : r.rows) {
    CHECK(row.x >= w.a);
    CHECK(row.x <= w.b);
    CHECK(row.error == doctest::Approx(std::abs(row.log_a_over_c - row.g)));
    sup = std::max(sup, row.error);
  }
  CHECK(r.sup_error == sup);
  CHECK_THROWS_AS(regime_profile(d, {0.01, 0.02}), UsageError);
  CHECK_THROWS_AS(regime_profile(d, {0.5, 0.4}), UsageError);
  std::ostringstream os;
  write_profile_csv(os, {r}, {"profile", {}, 0});
  CHECK(os.str().find("k,x,log_a_over_c,g,error") != std::string::npos);
  std::ostringstream js;
  write_profile_json(js, {r}, {"profile", {}, 0});
  CHECK(nlohmann::json::parse(js.str())["reports"][0]["sup_error"] == r.sup_error);
}

TEST_CASE("external polynomials are renormalized") {
  const CoeffPoly p = CoeffPoly::external({0.0, std::log(2.0), 0.0}, 2.0, false);
  CHECK(std::exp(p.log_coeffs[1]) == doctest::Approx(0.5));
  CHECK_FALSE(p.real_rooted_claimed);
  CHECK_THROWS_AS(CoeffPoly::external({0.0, -INFINITY}, 1.0, true), UsageError);
}
