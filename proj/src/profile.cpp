#include "ginoe/profile.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>

#include "ginoe/asymptotics.hpp"
#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"
#include "ginoe/specfn.hpp"
#include "numeric_util.hpp"

namespace ginoe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

void normalize(std::vector<double>& lc) {
  const double l = log_sum_exp(lc);
  for (double& x : lc) x -= l;
}

// Mean and variance of the coefficient index under the tilt z = e^{lz}.
struct IndexMoments {
  double mean, var;
};

IndexMoments index_moments(const CoeffPoly& p, double lz) {
  std::vector<double> t(p.log_coeffs.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = p.log_coeffs[k] + k * lz;
  const double l = log_sum_exp(t);
  double mean = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) mean += k * std::exp(t[k] - l);
  double var = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) var += (k - mean) * (k - mean) * std::exp(t[k] - l);
  return {mean, var};
}

}  // namespace

CoeffPoly CoeffPoly::from_pmf(const RealEigPmf& pmf) {
  CoeffPoly p;
  p.log_coeffs = pmf.log_p;
  normalize(p.log_coeffs);
  p.speed = pmf.regime.speed(pmf.n);
  p.step = 2.0;
  for (std::size_t j = 0; j < pmf.spectrum.eigenvalues.size(); ++j)
    p.log_roots.push_back(std::log(pmf.spectrum.complements[j]) - std::log(pmf.spectrum.eigenvalues[j]));
  p.real_rooted_claimed = true;
  return p;
}

CoeffPoly CoeffPoly::binomial(int n) {
  if (n < 1) throw UsageError("binomial: degree must be >= 1");
  CoeffPoly p;
  const double lg = log_gamma(n + 1.0);
  for (int k = 0; k <= n; ++k)
    p.log_coeffs.push_back(lg - log_gamma(k + 1.0) - log_gamma(n - k + 1.0) - n * std::numbers::ln2);
  p.speed = n;
  p.log_roots.assign(n, 0.0);
  p.real_rooted_claimed = true;
  return p;
}

CoeffPoly CoeffPoly::external(std::vector<double> log_coeffs, double speed, bool real_rooted_claimed, double step) {
  if (log_coeffs.size() < 2) throw UsageError("polynomial: degree must be >= 1");
  for (double x : log_coeffs)
    if (!std::isfinite(x)) throw UsageError("polynomial: every coefficient must be positive");
  if (!(speed > 0) || !(step > 0)) throw UsageError("polynomial: speed and step must be positive");
  CoeffPoly p;
  p.log_coeffs = std::move(log_coeffs);
  normalize(p.log_coeffs);
  p.speed = speed;
  p.step = step;
  p.real_rooted_claimed = real_rooted_claimed;
  return p;
}

double log_eval(const CoeffPoly& p, double log_z) {
  std::vector<double> t(p.log_coeffs.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = p.log_coeffs[k] + k * log_z;
  return log_sum_exp(t);
}

double phi_n(double z, const CoeffPoly& p) {
  if (!(z > 0) || !std::isfinite(z)) throw DomainError("phi_n: z must be positive");
  const double lz = std::log(z);
  std::vector<double> num;
  for (std::size_t k = 1; k < p.log_coeffs.size(); ++k) num.push_back(std::log(double(k)) + p.log_coeffs[k] + k * lz);
  return std::exp(log_sum_exp(num) - log_eval(p, lz)) / p.speed;
}

double theta_star(int k, const CoeffPoly& p) {
  const int n = p.degree();
  if (k <= 0 || k >= n)
    throw RangeError("theta_star: k/c_n must lie strictly inside (0, n/c_n)", 0.0, n / p.speed);
  auto f = [&](double l) { return index_moments(p, l).mean - k; };
  double lo = 0.0, hi = 0.0;
  const double f0 = f(0.0);
  if (f0 == 0.0) return 1.0;
  if (f0 < 0) {
    for (double s = 1.0; f(hi) < 0; s *= 2) {
      lo = hi;
      hi = s;
      if (s > 1e4) throw ConvergenceError("theta_star: bracket search failed", lo, hi);
    }
  } else {
    for (double s = 1.0; f(lo) > 0; s *= 2) {
      hi = lo;
      lo = -s;
      if (s > 1e4) throw ConvergenceError("theta_star: bracket search failed", hi, lo);
    }
  }
  double l = 0.5 * (lo + hi), prev = l;
  for (int it = 0; it < 200; ++it) {
    const IndexMoments m = index_moments(p, l);
    const double fl = m.mean - k;
    if (fl == 0.0) return std::exp(l);
    (fl < 0 ? lo : hi) = l;
    double next = l - fl / m.var;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    prev = l;
    l = next;
    if (std::abs(l - prev) <= 1e-13 * std::max(1.0, std::abs(l)) || hi - lo <= 1e-12 * std::max(1.0, std::abs(l)))
      return std::exp(l);
  }
  throw ConvergenceError("theta_star: Newton iteration did not converge", std::exp(prev), std::exp(l));
}

double tilted_variance(double theta, const std::vector<double>& roots) {
  if (!(theta > 0)) throw DomainError("tilted_variance: theta must be positive");
  double s = 0.0;
  for (double r : roots) {
    if (!(r > 0)) throw DomainError("tilted_variance: roots must be positive");
    s += r * theta / ((theta + r) * (theta + r));
  }
  return s;
}

double tilted_variance(double theta, const CoeffPoly& p) {
  if (!(theta > 0)) throw DomainError("tilted_variance: theta must be positive");
  if (!p.has_roots()) return index_moments(p, std::log(theta)).var;
  // r theta/(theta + r)^2 = p q with p = sigma(log theta - log r)
  double s = 0.0;
  const double lt = std::log(theta);
  for (double lr : p.log_roots) s += detail::sigmoid(lt - lr) * detail::sigmoid(lr - lt);
  return s;
}

std::vector<double> tilted_log_pmf(double theta, const CoeffPoly& p) {
  if (!(theta > 0)) throw DomainError("tilted_log_pmf: theta must be positive");
  const double lt = std::log(theta);
  if (!p.has_roots()) {
    const double lp = log_eval(p, lt);
    std::vector<double> out(p.log_coeffs.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.log_coeffs[k] + k * lt - lp;
    return out;
  }
  std::vector<double> ls, lf;
  for (double lr : p.log_roots) {
    const double d = detail::logaddexp(lt, lr);
    ls.push_back(lt - d);
    lf.push_back(lr - d);
  }
  return log_poisson_binomial(ls, lf);
}

TiltingTerms tilting_terms(int k, const CoeffPoly& p) {
  TiltingTerms t;
  t.k = k;
  t.theta = theta_star(k, p);
  const double lt = std::log(t.theta);
  t.log_a = p.log_coeffs.at(k);
  t.log_p_theta = log_eval(p, lt);
  t.k_log_theta = k * lt;
  t.log_tilted = tilted_log_pmf(t.theta, p).at(k);
  t.variance = tilted_variance(t.theta, p);
  t.local_clt = std::sqrt(2.0 * std::numbers::pi * t.variance) * std::exp(t.log_tilted);
  return t;
}

ProfileReport profile_report(const CoeffPoly& p, const std::function<double(double)>& g, Window window) {
  if (!(window.a < window.b)) throw UsageError("profile: window must satisfy a < b");
  ProfileReport r;
  r.degree = p.degree();
  r.speed = p.speed;
  r.window = window;
  for (int k = 1; k < p.degree(); ++k) {
    const double x = p.step * k / p.speed;
    if (x >= window.a && x <= window.b) r.rows.push_back({k, x, p.log_coeffs[k] / p.speed, 0.0, 0.0});
  }
  if (r.rows.empty()) throw UsageError("profile: window contains no admissible index");
  std::exception_ptr failure;
  const long m = static_cast<long>(r.rows.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < m; ++i) {
    try {
      r.rows[i].g = g(r.rows[i].x);
    } catch (...) {
#pragma omp critical(ginoe_profile)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (ProfileRow& row : r.rows) {
    row.error = std::abs(row.log_a_over_c - row.g);
    r.sup_error = std::max(r.sup_error, row.error);
  }
  return r;
}

double entropy_profile(double x) {
  if (!(x > 0 && x < 1)) throw DomainError("entropy_profile: x must lie in (0, 1)");
  return -std::numbers::ln2 - x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

Window default_window(const Regime& regime, int n) {
  const double x0 = typical_value(regime);
  const double top = regime.is_strong() ? 2.0 * n / regime.speed(n) : 1.0;
  return {0.25 * x0, std::min(2.5 * x0, top)};
}

ProfileReport regime_profile(const RealEigPmf& pmf, Window window) {
  const Regime regime = pmf.regime;
  return profile_report(CoeffPoly::from_pmf(pmf), [&](double x) { return -rate(x, regime).phi; }, window);
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileReport>& reports, const OutputHeader& header) {
  write_csv_header(os, header);
  // One block per n, separated by two blank lines (gnuplot "index").
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const ProfileReport& r = reports[i];
    if (i > 0) os << "\n\n";
    os << "# n: " << r.degree << '\n'
       << "# speed: " << format_double(r.speed) << '\n'
       << "# window: " << format_double(r.window.a) << ' ' << format_double(r.window.b) << '\n'
       << "# sup_error: " << format_double(r.sup_error) << '\n';
    write_csv_row(os, {"k", "x", "log_a_over_c", "g", "error"});
    for (const ProfileRow& row : r.rows)
      write_csv_row(os, {std::to_string(row.k), format_double(row.x), format_double(row.log_a_over_c),
                         format_double(row.g), format_double(row.error)});
  }
}

void write_profile_json(std::ostream& os, const std::vector<ProfileReport>& reports, const OutputHeader& header) {
  nlohmann::json j;
  j["header"] = header_json(header);
  nlohmann::json arr = nlohmann::json::array();
  for (const ProfileReport& r : reports) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ProfileRow& row : r.rows)
      rows.push_back({{"k", row.k}, {"x", row.x}, {"log_a_over_c", row.log_a_over_c}, {"g", row.g}, {"error", row.error}});
    arr.push_back({{"n", r.degree},
                   {"speed", r.speed},
                   {"window", {r.window.a, r.window.b}},
                   {"sup_error", r.sup_error},
                   {"rows", rows}});
  }
  j["reports"] = arr;
  os << j.dump(2) << '\n';
}

}  // namespace ginoe
