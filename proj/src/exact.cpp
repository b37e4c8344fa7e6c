#include "ginoe/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ginoe/io.hpp"

namespace ginoe {

namespace {

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// Central moments of the law of 2k.
struct Moments {
  double mean, m2, m3, m4;
};

Moments moments(const RealEigPmf& d) {
  std::vector<double> p(d.log_p.size());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) total += (p[k] = std::exp(d.log_p[k]));
  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) mean += 2.0 * k * p[k] / total;
  Moments m{mean, 0, 0, 0};
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double x = 2.0 * k - mean, w = p[k] / total;
    m.m2 += w * x * x;
    m.m3 += w * x * x * x;
    m.m4 += w * x * x * x * x;
  }
  return m;
}

}  // namespace

double RealEigPmf::p(int k) const { return std::exp(log_p.at(k)); }

std::vector<double> log_poisson_binomial(const std::vector<double>& log_success,
                                         const std::vector<double>& log_failure) {
  if (log_success.size() != log_failure.size()) throw DomainError("log_poisson_binomial: size mismatch");
  std::vector<double> c{0.0};
  for (std::size_t j = 0; j < log_success.size(); ++j) {
    std::vector<double> next(c.size() + 1, -std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] = logaddexp(next[k], c[k] + log_failure[j]);
      next[k + 1] = logaddexp(next[k + 1], c[k] + log_success[j]);
    }
    c.swap(next);
  }
  return c;
}

RealEigPmf pmf_from_kernel(const KernelMatrix& m, const Regime& regime) {
  RealEigPmf out;
  out.n = m.n();
  out.regime = regime;
  out.precision_bits = m.precision_bits();
  with_precision(m.precision_bits(), [&](auto zero) {
    using Real = decltype(zero);
    const auto s = detail::solve_spectrum<Real>(m, EigenMethod::Automatic);
    detail::check_unit_interval(s, m.precision_bits());
    out.spectrum.precision_bits = m.precision_bits();
    out.spectrum.residual = s.residual;
    out.spectrum.sweeps = s.sweeps;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out.spectrum.eigenvalues.push_back(to_double(s.values[i]));
      out.spectrum.complements.push_back(to_double(s.complements[i]));
    }
    if constexpr (std::is_same_v<Real, double>) {
      std::vector<double> ls, lf;
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        ls.push_back(std::log(s.values[i]));
        lf.push_back(std::log(s.complements[i]));
      }
      out.log_p = log_poisson_binomial(ls, lf);
      double total = 0.0;
      for (double x : out.log_p) total += std::exp(x);
      out.scale_check = std::abs(total - 1.0);
    } else {
      // MPFR exponents do not underflow here, so plain products suffice.
      std::vector<Real> c{Real(1)};
      for (std::size_t j = 0; j < s.values.size(); ++j) {
        std::vector<Real> next(c.size() + 1, Real(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
          next[k] += c[k] * s.complements[j];
          next[k + 1] += c[k] * s.values[j];
        }
        c.swap(next);
      }
      Real total = 0;
      for (const Real& x : c) {
        total += x;
        out.log_p.push_back(to_double(log(x)));
      }
      out.scale_check = to_double(abs(total - 1));
    }
    return 0;
  });
  for (double x : out.log_p)
    if (!std::isfinite(x)) throw NumericalError("pmf: non-finite log-probability");
  return out;
}

RealEigPmf pmf(int n, const Regime& regime, int precision_bits) {
  regime.check_at(n);
  return pmf_from_kernel(build(n, regime, precision_bits), regime);
}

double generating_log(double z, const RealEigPmf& d) {
  if (!(z > 0)) throw DomainError("generating_log: z must be positive");
  const double lz = std::log(z);
  std::vector<double> t(d.log_p.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = d.log_p[k] + k * lz;
  return log_sum_exp(t);
}

double exact_cumulant(int ell, const RealEigPmf& d) {
  const Moments m = moments(d);
  switch (ell) {
    case 1: return m.mean;
    case 2: return m.m2;
    case 3: return m.m3;
    case 4: return m.m4 - 3.0 * m.m2 * m.m2;
    default: throw DomainError("exact_cumulant: order must be 1..4");
  }
}

double trace_log_expansion_check(double z, const RealEigPmf& d, int k_max) {
  if (!(std::abs(z - 1.0) < 1.0)) throw RangeError("trace_log_expansion_check: need |z-1| < 1", 0.0, 2.0);
  if (k_max < 1) throw DomainError("trace_log_expansion_check: k_max must be >= 1");
  double series = 0.0;
  for (int k = 1; k <= k_max; ++k) series -= std::pow(1.0 - z, k) * trace_power(d.spectrum, k) / k;
  return std::abs(generating_log(z, d) - series);
}

double trace_log_expansion_check(double z, int n, const Regime& regime, int k_max, int precision_bits) {
  return trace_log_expansion_check(z, pmf(n, regime, precision_bits), k_max);
}

PmfSummary summarize(const RealEigPmf& d) {
  const Moments m = moments(d);
  return {m.mean, m.m2, m.m3, m.m4 - 3.0 * m.m2 * m.m2, d.scale_check};
}

void write_pmf_csv(std::ostream& os, const RealEigPmf& d, const OutputHeader& header) {
  write_csv_header(os, header);
  const PmfSummary s = summarize(d);
  os << "# regime: " << d.regime.describe() << '\n'
     << "# tau: " << format_double(d.regime.tau_at(d.n)) << '\n'
     << "# mean: " << format_double(s.mean) << '\n'
     << "# variance: " << format_double(s.variance) << '\n'
     << "# kappa3: " << format_double(s.kappa3) << '\n'
     << "# kappa4: " << format_double(s.kappa4) << '\n'
     << "# scale_check: " << format_double(s.scale_check) << '\n';
  write_csv_row(os, {"m", "log_p", "p"});
  for (std::size_t k = 0; k < d.log_p.size(); ++k)
    write_csv_row(os, {std::to_string(2 * k), format_double(d.log_p[k]), format_double(std::exp(d.log_p[k]))});
}

void write_pmf_json(std::ostream& os, const RealEigPmf& d, const OutputHeader& header) {
  const PmfSummary s = summarize(d);
  nlohmann::json j;
  j["header"] = header_json(header);
  j["n"] = d.n;
  j["dim"] = 2 * d.n;
  j["regime"] = d.regime.describe();
  j["tau"] = d.regime.tau_at(d.n);
  j["precision_bits"] = d.precision_bits;
  j["scale_check"] = d.scale_check;
  j["log_p"] = d.log_p;
  j["summary"] = {{"mean", s.mean}, {"variance", s.variance}, {"kappa3", s.kappa3}, {"kappa4", s.kappa4}};
  j["spectrum"] = {{"eigenvalues", d.spectrum.eigenvalues}, {"residual", d.spectrum.residual}};
  os << j.dump(2) << '\n';
}

}  // namespace ginoe
