#pragma once

#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "ginoe/jacobi.hpp"
#include "ginoe/precision.hpp"
#include "ginoe/regime.hpp"

namespace ginoe {

struct OutputHeader;

// Symmetric n x n matrix whose determinant det[I + (z-1)M] generates p_{2n,2k}.
// Entries are integer sums (exact) times an irrational scale, rounded once to 1024 bits.
class KernelMatrix {
 public:
  int n() const { return n_; }
  double tau() const { return tau_.get_d(); }
  const mpq_class& tau_exact() const { return tau_; }
  int precision_bits() const { return precision_bits_; }

  // 0-based access, rounded to double.
  double operator()(int j, int k) const { return entries_[idx(j, k)]; }
  const Float1024& high_precision(int j, int k) const { return hp_[idx(j, k)]; }
  // Exact integer factor of entry (j,k); the entry is scale(j+k) * numerator / sqrt((2j)!(2k)!).
  const mpz_class& numerator(int j, int k) const { return numerators_[idx(j, k)]; }

  // Column-major copy in the requested working type.
  template <class Real>
  std::vector<Real> as() const {
    std::vector<Real> out(hp_.size());
    for (std::size_t i = 0; i < hp_.size(); ++i) {
      if constexpr (std::is_same_v<Real, double>) out[i] = hp_[i].convert_to<double>();
      else out[i] = static_cast<Real>(hp_[i]);
    }
    return out;
  }

 private:
  friend KernelMatrix build_impl(int, const mpq_class&, int, bool);
  std::size_t idx(int j, int k) const { return static_cast<std::size_t>(j) + static_cast<std::size_t>(n_) * k; }

  int n_ = 0;
  mpq_class tau_;
  int precision_bits_ = 0;
  std::vector<mpz_class> numerators_;
  std::vector<Float1024> hp_;
  std::vector<double> entries_;
};

// OpenMP over entries; every (j,k) is independent.
KernelMatrix build(int n, const mpq_class& tau, int precision_bits = kAutoPrecision);
KernelMatrix build(int n, double tau, int precision_bits = kAutoPrecision);
KernelMatrix build(int n, const Regime& regime, int precision_bits = kAutoPrecision);
// Same result computed on one thread, kept as the reference for the parallel build.
KernelMatrix build_serial(int n, const mpq_class& tau, int precision_bits = kAutoPrecision);

// Single entry [M_n]_{j,k}, 1-based as in the determinantal formula, rounded to double.
double entry(int j, int k, int n, double tau, int precision_bits = kAutoPrecision);

enum class EigenMethod {
  Automatic,         // Eigen's tridiagonal QR in double, parallel Jacobi above
  JacobiCyclic,      // serial reference at any precision
  JacobiRoundRobin,  // parallel at any precision
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending, each in (0,1)
  std::vector<double> complements;  // 1 - eigenvalue, taken in working precision
  double residual = 0.0;            // max over eigenpairs of max |M v - lambda v|
  int precision_bits = 0;
  int sweeps = 0;                   // Jacobi sweeps, 0 for the double path
};

Spectrum spectrum(const KernelMatrix& m, EigenMethod method = EigenMethod::Automatic);

// sum_j lambda_j^k
double trace_power(const Spectrum& s, int k);
double trace_power(const KernelMatrix& m, int k);

// Row-major CSV of the 1024-bit entries as decimal strings.
void write_matrix_csv(std::ostream& os, const KernelMatrix& m, const OutputHeader& header);

namespace detail {

template <class Real>
struct SpectrumData {
  std::vector<Real> values;       // ascending
  std::vector<Real> complements;  // 1 - value
  double residual = 0.0;
  int sweeps = 0;
};

// Defined and instantiated for every precision tier in kernel.cpp.
template <class Real>
SpectrumData<Real> solve_spectrum(const KernelMatrix& m, EigenMethod method);

// Throws NumericalError unless every eigenvalue and complement is positive.
template <class Real>
void check_unit_interval(const SpectrumData<Real>& s, int precision_bits);

}  // namespace detail

}  // namespace ginoe
