#include "ginoe/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>

#include <boost/random/normal_distribution.hpp>
#include <omp.h>

#include "ginoe/errors.hpp"
#include "ginoe/io.hpp"

namespace ginoe {

namespace {

struct BlockResult {
  std::vector<long> counts;
  long exclusions = 0;
};

BlockResult run_block(const SampleConfig& c, long block) {
  BlockResult r;
  r.counts.assign(c.dim / 2 + 1, 0);
  Rng rng = block_stream(c.seed, static_cast<std::uint64_t>(block));
  const long first = block * kSampleBlock;
  const long last = std::min(c.trials, first + kSampleBlock);
  const double tau = c.regime.tau_at(c.dim / 2);
  for (long t = first; t < last; ++t) {
    const Eigen::MatrixXd x = sample_matrix(c.dim, tau, rng);
    int m;
    try {
      m = count_real_eigs(x);
    } catch (const NumericalError&) {
      ++r.exclusions;
      continue;
    }
    if (m % 2 != 0) throw NumericalError("sampler: odd real-eigenvalue count in an even-dimensional sample");
    ++r.counts[m / 2];
  }
  return r;
}

EmpiricalPmf merge(const SampleConfig& c, const std::vector<BlockResult>& blocks) {
  EmpiricalPmf e;
  e.dim = c.dim;
  e.regime = c.regime;
  e.trials = c.trials;
  e.seed = c.seed;
  e.counts.assign(c.dim / 2 + 1, 0);
  for (const BlockResult& b : blocks) {
    e.exclusions += b.exclusions;
    for (std::size_t k = 0; k < b.counts.size(); ++k) e.counts[k] += b.counts[k];
  }
  return e;
}

long block_count(const SampleConfig& c) { return (c.trials + kSampleBlock - 1) / kSampleBlock; }

}  // namespace

void SampleConfig::validate() const {
  if (dim < 2 || dim % 2 != 0) throw UsageError("sample: dimension must be even and >= 2, got " + std::to_string(dim));
  if (trials < 1) throw UsageError("sample: trials must be >= 1");
  if (workers < 0) throw UsageError("sample: workers must be >= 0");
  regime.check_at(dim / 2);
}

Rng block_stream(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return Rng(seq);
}

Eigen::MatrixXd sample_matrix(int dim, double tau, Rng& rng) {
  if (dim < 1) throw UsageError("sample_matrix: dimension must be positive");
  if (!(tau >= 0.0 && tau < 1.0)) throw DomainError("sample_matrix: tau must lie in [0, 1)");
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = normal(rng);
  const double a = std::sqrt(1.0 + tau) / 2.0, b = std::sqrt(1.0 - tau) / 2.0;
  const Eigen::MatrixXd gt = g.transpose();
  return a * (g + gt) + b * (g - gt);
}

Eigen::MatrixXd sample_matrix(int dim, const Regime& regime, Rng& rng) {
  if (dim < 2 || dim % 2 != 0) throw UsageError("sample_matrix: dimension must be even and >= 2");
  regime.check_at(dim / 2);
  return sample_matrix(dim, regime.tau_at(dim / 2), rng);
}

int count_real_eigs(const Eigen::MatrixXd& x) {
  if (x.rows() != x.cols()) throw UsageError("count_real_eigs: matrix must be square");
  const int n = static_cast<int>(x.rows());
  if (n == 0) return 0;
  Eigen::RealSchur<Eigen::MatrixXd> schur(x, false);
  if (schur.info() != Eigen::Success) throw ConvergenceError("count_real_eigs: real Schur iteration failed", 0, 0);
  // Eigen splits 2x2 blocks with real eigenvalues, so a nonzero subdiagonal marks a conjugate pair.
  const Eigen::MatrixXd& t = schur.matrixT();
  int count = 0;
  for (int i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      i += 2;
    } else {
      ++count;
      ++i;
    }
  }
  return count;
}

double EmpiricalPmf::freq(int k) const {
  const long a = accepted();
  return a > 0 ? static_cast<double>(counts.at(k)) / a : 0.0;
}

EmpiricalPmf empirical_pmf_serial(const SampleConfig& config) {
  config.validate();
  std::vector<BlockResult> blocks;
  for (long b = 0; b < block_count(config); ++b) blocks.push_back(run_block(config, b));
  return merge(config, blocks);
}

EmpiricalPmf empirical_pmf(const SampleConfig& config) {
  config.validate();
  const long nb = block_count(config);
  std::vector<BlockResult> blocks(nb);
  std::exception_ptr failure;
  const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long b = 0; b < nb; ++b) {
    try {
      blocks[b] = run_block(config, b);
    } catch (...) {
#pragma omp critical(ginoe_sampler)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merge(config, blocks);
}

double total_variation(const EmpiricalPmf& e, const std::vector<double>& p) {
  if (p.size() != e.counts.size()) throw UsageError("total_variation: support size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(e.freq(static_cast<int>(k)) - p[k]);
  return 0.5 * s;
}

void write_sample_csv(std::ostream& os, const EmpiricalPmf& e, const OutputHeader& header) {
  write_csv_header(os, header);
  os << "# seed: " << e.seed << '\n' << "# trials: " << e.trials << '\n' << "# exclusions: " << e.exclusions << '\n';
  write_csv_row(os, {"m", "count", "freq"});
  for (std::size_t k = 0; k < e.counts.size(); ++k)
    write_csv_row(os, {std::to_string(2 * k), std::to_string(e.counts[k]), format_double(e.freq(static_cast<int>(k)))});
}

void write_sample_json(std::ostream& os, const EmpiricalPmf& e, const OutputHeader& header) {
  nlohmann::json j;
  j["header"] = header_json(header);
  j["dim"] = e.dim;
  j["regime"] = e.regime.describe();
  j["seed"] = e.seed;
  j["trials"] = e.trials;
  j["exclusions"] = e.exclusions;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < e.counts.size(); ++k)
    rows.push_back({{"m", 2 * k}, {"count", e.counts[k]}, {"freq", e.freq(static_cast<int>(k))}});
  j["histogram"] = rows;
  os << j.dump(2) << '\n';
}

}  // namespace ginoe
