#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ginoe/regime.hpp"

namespace ginoe {

struct OutputHeader;

struct SampleConfig {
  int dim = 2;  // matrix dimension 2n
  Regime regime = Regime::strong(0.0);
  long trials = 1;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 lets OpenMP decide

  // Throws UsageError (odd or small dim, trials < 1, negative workers) or RangeError (weak alpha^2 >= dim).
  void validate() const;
};

using Rng = std::mt19937_64;

// Trials are generated in fixed blocks; block b draws from its own engine seeded by (seed, b), so
// the histogram does not depend on how blocks are spread over threads.
constexpr long kSampleBlock = 256;
Rng block_stream(std::uint64_t seed, std::uint64_t block);

// X = sqrt(1+tau)/2 (G + G^T) + sqrt(1-tau)/2 (G - G^T), G with i.i.d. standard normal entries.
Eigen::MatrixXd sample_matrix(int dim, double tau, Rng& rng);
Eigen::MatrixXd sample_matrix(int dim, const Regime& regime, Rng& rng);

// Number of 1x1 blocks in the real Schur form. Throws NumericalError if the QR iteration fails.
int count_real_eigs(const Eigen::MatrixXd& x);

struct EmpiricalPmf {
  int dim = 0;
  Regime regime = Regime::strong(0.0);
  long trials = 0;      // requested
  long exclusions = 0;  // samples dropped because the Schur iteration failed
  std::uint64_t seed = 0;
  std::vector<long> counts;  // counts[k] is the number of samples with m = 2k real eigenvalues

  long accepted() const { return trials - exclusions; }
  double freq(int k) const;
};

// OpenMP over blocks with per-block histograms merged at the end.
EmpiricalPmf empirical_pmf(const SampleConfig& config);
// Same blocks on one thread; the reference for empirical_pmf.
EmpiricalPmf empirical_pmf_serial(const SampleConfig& config);

// 1/2 sum |freq - p|
double total_variation(const EmpiricalPmf& e, const std::vector<double>& p);

// Columns m, count, freq.
void write_sample_csv(std::ostream& os, const EmpiricalPmf& e, const OutputHeader& header);
void write_sample_json(std::ostream& os, const EmpiricalPmf& e, const OutputHeader& header);

}  // namespace ginoe
