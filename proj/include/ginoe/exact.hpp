#pragma once

#include <iosfwd>
#include <vector>

#include "ginoe/kernel.hpp"
#include "ginoe/regime.hpp"

namespace ginoe {

struct OutputHeader;

// Law of N_{2n}: log_p[k] = log P(N_{2n} = 2k), k = 0..n.
struct RealEigPmf {
  int n = 0;
  Regime regime = Regime::strong(0.0);
  int precision_bits = 0;
  std::vector<double> log_p;
  double scale_check = 0.0;  // |sum_k p_k - 1| evaluated in the working precision
  Spectrum spectrum;         // the kernel spectrum the coefficients were built from

  double p(int k) const;
};

RealEigPmf pmf(int n, const Regime& regime, int precision_bits = kAutoPrecision);
RealEigPmf pmf_from_kernel(const KernelMatrix& m, const Regime& regime);

// log of the coefficients of prod_j (q_j + p_j z), given log p_j and log q_j, factors taken in
// the order supplied. Log-domain convolution, so nothing underflows.
std::vector<double> log_poisson_binomial(const std::vector<double>& log_success,
                                         const std::vector<double>& log_failure);

// log sum_k p_k z^k
double generating_log(double z, const RealEigPmf& pmf);

// Cumulant of order 1..4 of N_{2n} (values 2k).
double exact_cumulant(int ell, const RealEigPmf& pmf);

// |generating_log(z) + sum_{k<=k_max} (1-z)^k Tr(M^k)/k|
double trace_log_expansion_check(double z, const RealEigPmf& pmf, int k_max);
double trace_log_expansion_check(double z, int n, const Regime& regime, int k_max,
                                 int precision_bits = kAutoPrecision);

struct PmfSummary {
  double mean, variance, kappa3, kappa4, scale_check;
};
PmfSummary summarize(const RealEigPmf& pmf);

// Columns m, log_p, p.
void write_pmf_csv(std::ostream& os, const RealEigPmf& pmf, const OutputHeader& header);
void write_pmf_json(std::ostream& os, const RealEigPmf& pmf, const OutputHeader& header);

}  // namespace ginoe
