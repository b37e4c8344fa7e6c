#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "ginoe/exact.hpp"
#include "ginoe/regime.hpp"

namespace ginoe {

struct OutputHeader;

// P(z) = sum_k a_k z^k with P(1) = 1, stored as log a_k. When the roots are known,
// P(z) = prod_j (z + r_j)/(1 + r_j) with r_j > 0.
struct CoeffPoly {
  std::vector<double> log_coeffs;
  double speed = 1.0;  // c_n
  double step = 1.0;   // count units per coefficient index; the profile variable is x = step * k / c_n
  std::vector<double> log_roots;  // log r_j; empty when unknown
  bool real_rooted_claimed = false;

  int degree() const { return static_cast<int>(log_coeffs.size()) - 1; }
  bool has_roots() const { return !log_roots.empty(); }

  // Roots r_j = (1 - lambda_j)/lambda_j from the kernel spectrum; step 2 since N = 2k.
  static CoeffPoly from_pmf(const RealEigPmf& pmf);
  // ((z+1)/2)^n with c_n = n.
  static CoeffPoly binomial(int n);
  // Renormalized so that P(1) = 1. The profile results are conditional on real_rooted_claimed.
  static CoeffPoly external(std::vector<double> log_coeffs, double speed, bool real_rooted_claimed, double step = 1.0);
};

double log_eval(const CoeffPoly& p, double log_z);

// z P'(z) / (c_n P(z))
double phi_n(double z, const CoeffPoly& p);

// Unique theta > 0 with phi_n(theta) = k / c_n, 0 < k < degree.
double theta_star(int k, const CoeffPoly& p);

// sum_j r_j theta / (theta + r_j)^2
double tilted_variance(double theta, const std::vector<double>& roots);
double tilted_variance(double theta, const CoeffPoly& p);

// log P_theta(S = k) for S a sum of Bernoulli(theta/(theta + r_j)), by convolution over the roots.
std::vector<double> tilted_log_pmf(double theta, const CoeffPoly& p);

// log a_k = log P(theta) - k log theta + log P_theta(S = k), each piece reported separately.
struct TiltingTerms {
  int k;
  double theta;
  double log_a;
  double log_p_theta;
  double k_log_theta;
  double log_tilted;
  double residual() const { return log_a - (log_p_theta - k_log_theta + log_tilted); }
  double variance;       // tilted variance at theta
  double local_clt;      // sqrt(2 pi variance) P_theta(S = k)
};
TiltingTerms tilting_terms(int k, const CoeffPoly& p);

struct Window {
  double a, b;  // in the profile variable x
};

struct ProfileRow {
  int k;
  double x;
  double log_a_over_c;
  double g;
  double error;
};

struct ProfileReport {
  int degree = 0;
  double speed = 0.0;
  Window window{0, 0};
  std::vector<ProfileRow> rows;
  double sup_error = 0.0;
};

// Rows for every index with x in [a, b] and 0 < k < degree; g evaluated in parallel over k.
ProfileReport profile_report(const CoeffPoly& p, const std::function<double(double)>& g, Window window);

// -log 2 - x log x - (1 - x) log(1 - x)
double entropy_profile(double x);

// [0.25, 2.5] times the typical value, clipped to the admissible interval.
Window default_window(const Regime& regime, int n);

// Profile of log p_{2n,2k}/c_n against -phi for the regime.
ProfileReport regime_profile(const RealEigPmf& pmf, Window window);

void write_profile_csv(std::ostream& os, const std::vector<ProfileReport>& reports, const OutputHeader& header);
void write_profile_json(std::ostream& os, const std::vector<ProfileReport>& reports, const OutputHeader& header);

}  // namespace ginoe
