#include "ginoe/kernel.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "ginoe/io.hpp"
#include "ginoe/specfn.hpp"

namespace ginoe {

namespace {

// Integer pieces of the exact-moment expansion for tau = P/Q.
//   U_j[a] = h^{(2j)}_{2a} (P+Q)^a (4P)^{j-a}
//   N_jk   = sum_{a,b} U_j[a] U_k[b] (2(a+b)-1)!!
// and M_jk = sqrt((P+Q)/(2Q)) N_jk / (B^{j+k} sqrt((2j)!(2k)!)) with B = 8Q.
// At tau = 0 only the leading monomials survive: N_jk = (2(j+k)-1)!!, B = 2.
struct Expansion {
  int n = 0;
  bool zero_tau = false;
  mpz_class P, Q, base;
  std::vector<mpz_class> dfact;               // (2r-1)!!, r = 0 .. 2n-2
  std::vector<std::vector<mpz_class>> U;      // U[j][a]
  std::vector<std::vector<mpz_class>> V;      // V[k][a] = sum_b U[k][b] dfact[a+b]
};

Expansion prepare(int n, const mpq_class& tau, bool parallel) {
  Expansion e;
  e.n = n;
  e.zero_tau = (tau == 0);
  e.P = tau.get_num();
  e.Q = tau.get_den();
  e.base = e.zero_tau ? mpz_class(2) : mpz_class(8 * e.Q);
  e.dfact.resize(2 * n - 1);
  e.dfact[0] = 1;
  for (int r = 1; r <= 2 * n - 2; ++r) e.dfact[r] = e.dfact[r - 1] * (2 * r - 1);
  if (e.zero_tau) return e;

  const auto h = hermite_table(2 * n - 2);
  const mpz_class pq = e.P + e.Q, p4 = 4 * e.P;
  e.U.resize(n);
  for (int j = 0; j < n; ++j) {
    e.U[j].resize(j + 1);
    mpz_class pow_pq = 1;
    for (int a = 0; a <= j; ++a) {
      mpz_class pow_p4;
      mpz_pow_ui(pow_p4.get_mpz_t(), p4.get_mpz_t(), static_cast<unsigned long>(j - a));
      e.U[j][a] = h[2 * j].coeffs[2 * a] * pow_pq * pow_p4;
      pow_pq *= pq;
    }
  }
  e.V.resize(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int k = 0; k < n; ++k) {
    auto& v = e.V[k];
    v.assign(n, mpz_class(0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= k; ++b) v[a] += e.U[k][b] * e.dfact[a + b];
  }
  return e;
}

mpz_class numerator_of(const Expansion& e, int j, int k) {
  if (e.zero_tau) return e.dfact[j + k];
  mpz_class s = 0;
  for (int a = 0; a <= j; ++a) s += e.U[j][a] * e.V[k][a];
  return s;
}

Float1024 to_float(const mpz_class& z) {
  Float1024 x;
  mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return x;
}

Float1024 materialize(const Expansion& e, const mpz_class& num, int j, int k,
                      const std::vector<Float1024>& sqrt_fact, const Float1024& prefactor) {
  mpz_class scale;
  mpz_pow_ui(scale.get_mpz_t(), e.base.get_mpz_t(), static_cast<unsigned long>(j + k));
  return prefactor * to_float(num) / to_float(scale) / (sqrt_fact[j] * sqrt_fact[k]);
}

std::vector<Float1024> sqrt_factorials(int n) {
  std::vector<Float1024> out(n);
  mpz_class f = 1;
  for (int j = 0; j < n; ++j) {
    if (j > 0) f *= mpz_class(2 * j - 1) * (2 * j);
    out[j] = sqrt(to_float(f));
  }
  return out;
}

Float1024 prefactor_of(const mpq_class& tau) {
  // sqrt((1+tau)/2)
  mpq_class r = (1 + tau) / 2;
  r.canonicalize();
  return sqrt(to_float(r.get_num()) / to_float(r.get_den()));
}

void validate_build(int n, const mpq_class& tau) {
  if (n < 1) throw DomainError("kernel side n must be >= 1");
  if (tau < 0 || tau >= 1) throw RangeError("tau must lie in [0,1)", 0.0, 1.0);
}

}  // namespace

KernelMatrix build_impl(int n, const mpq_class& tau_in, int precision_bits, bool parallel) {
  mpq_class tau = tau_in;
  tau.canonicalize();
  validate_build(n, tau);
  KernelMatrix m;
  m.n_ = n;
  m.tau_ = tau;
  m.precision_bits_ = resolve_precision_bits(precision_bits, n);

  const Expansion e = prepare(n, tau, parallel);
  const auto sqrt_fact = sqrt_factorials(n);
  const Float1024 pref = prefactor_of(tau);
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  m.numerators_.assign(nn, mpz_class(0));
  m.hp_.assign(nn, Float1024(0));
  m.entries_.assign(nn, 0.0);

  // Upper triangle computed once, then mirrored so symmetry is exact.
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(nn / 2 + n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j <= k; ++j) pairs.emplace_back(j, k);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [j, k] = pairs[i];
    const std::size_t up = m.idx(j, k), lo = m.idx(k, j);
    m.numerators_[up] = numerator_of(e, j, k);
    m.hp_[up] = materialize(e, m.numerators_[up], j, k, sqrt_fact, pref);
    m.entries_[up] = m.hp_[up].convert_to<double>();
    if (lo != up) {
      m.numerators_[lo] = m.numerators_[up];
      m.hp_[lo] = m.hp_[up];
      m.entries_[lo] = m.entries_[up];
    }
  }
  return m;
}

KernelMatrix build(int n, const mpq_class& tau, int precision_bits) {
  return build_impl(n, tau, precision_bits, true);
}

KernelMatrix build(int n, double tau, int precision_bits) {
  if (!(tau >= 0.0 && tau < 1.0)) throw RangeError("tau must lie in [0,1)", 0.0, 1.0);
  return build(n, mpq_class(tau), precision_bits);
}

KernelMatrix build(int n, const Regime& regime, int precision_bits) {
  return build(n, regime.tau_exact_at(n), precision_bits);
}

KernelMatrix build_serial(int n, const mpq_class& tau, int precision_bits) {
  return build_impl(n, tau, precision_bits, false);
}

double entry(int j, int k, int n, double tau, int precision_bits) {
  if (!(tau >= 0.0 && tau < 1.0)) throw RangeError("tau must lie in [0,1)", 0.0, 1.0);
  if (n < 1 || j < 1 || k < 1 || j > n || k > n) throw DomainError("entry: need 1 <= j,k <= n");
  resolve_precision_bits(precision_bits, n);
  mpq_class t(tau);
  t.canonicalize();
  // Only rows up to max(j,k) of the expansion are needed.
  const int m = std::max(j, k);
  const Expansion e = prepare(m, t, false);
  const auto sqrt_fact = sqrt_factorials(m);
  const mpz_class num = numerator_of(e, j - 1, k - 1);
  return materialize(e, num, j - 1, k - 1, sqrt_fact, prefactor_of(t)).convert_to<double>();
}

namespace detail {

template <class Real>
SpectrumData<Real> solve_spectrum(const KernelMatrix& m, EigenMethod method) {
  const int n = m.n();
  const std::vector<Real> a = m.as<Real>();
  SpectrumData<Real> out;
  std::vector<Real> values, vectors;

  if (method == EigenMethod::Automatic && std::is_same_v<Real, double>) {
    Eigen::MatrixXd A(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) A(j, k) = m(j, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver did not converge", 0.0, 0.0);
    values.resize(n);
    vectors.resize(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
      values[j] = static_cast<Real>(es.eigenvalues()(j));
      for (int i = 0; i < n; ++i) vectors[i + std::size_t(n) * j] = static_cast<Real>(es.eigenvectors()(i, j));
    }
  } else {
    const auto ordering =
        method == EigenMethod::JacobiCyclic ? JacobiOrdering::Cyclic : JacobiOrdering::RoundRobin;
    auto eig = jacobi_eigen<Real>(a, n, ordering);
    values = std::move(eig.values);
    vectors = std::move(eig.vectors);
    out.sweeps = eig.sweeps;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return values[x] < values[y]; });

  out.values.resize(n);
  out.complements.resize(n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = values[order[i]];
    out.complements[i] = Real(1) - out.values[i];
  }

  std::vector<double> col_residual(n, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < n; ++j) {
    using std::abs;
    const Real* v = &vectors[std::size_t(n) * j];
    Real worst = 0;
    for (int i = 0; i < n; ++i) {
      Real acc = -values[j] * v[i];
      for (int k = 0; k < n; ++k) acc += a[i + std::size_t(n) * k] * v[k];
      if (abs(acc) > worst) worst = abs(acc);
    }
    col_residual[j] = to_double(worst);
  }
  out.residual = *std::max_element(col_residual.begin(), col_residual.end());
  return out;
}

template <class Real>
void check_unit_interval(const SpectrumData<Real>& s, int precision_bits) {
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!(s.values[i] > 0) || !(s.complements[i] > 0)) {
      throw NumericalError("kernel eigenvalue " + format_double(to_double(s.values[i])) +
                           " outside (0,1) at precision " + std::to_string(precision_bits) +
                           " bits; raise the precision");
    }
  }
}

#define GINOE_INSTANTIATE(R)                                                        \
  template SpectrumData<R> solve_spectrum<R>(const KernelMatrix&, EigenMethod); \
  template void check_unit_interval<R>(const SpectrumData<R>&, int);
GINOE_INSTANTIATE(double)
GINOE_INSTANTIATE(Float128)
GINOE_INSTANTIATE(Float256)
GINOE_INSTANTIATE(Float512)
GINOE_INSTANTIATE(Float1024)
#undef GINOE_INSTANTIATE

}  // namespace detail

Spectrum spectrum(const KernelMatrix& m, EigenMethod method) {
  return with_precision(m.precision_bits(), [&](auto zero) {
    using Real = decltype(zero);
    const auto data = detail::solve_spectrum<Real>(m, method);
    detail::check_unit_interval(data, m.precision_bits());
    Spectrum s;
    s.precision_bits = m.precision_bits();
    s.residual = data.residual;
    s.sweeps = data.sweeps;
    for (std::size_t i = 0; i < data.values.size(); ++i) {
      s.eigenvalues.push_back(to_double(data.values[i]));
      s.complements.push_back(to_double(data.complements[i]));
    }
    return s;
  });
}

double trace_power(const Spectrum& s, int k) {
  if (k < 1) throw DomainError("trace_power: k must be >= 1");
  double sum = 0.0;
  for (double l : s.eigenvalues) sum += std::pow(l, k);
  return sum;
}

double trace_power(const KernelMatrix& m, int k) {
  if (k < 1) throw DomainError("trace_power: k must be >= 1");
  return trace_power(spectrum(m), k);
}

void write_matrix_csv(std::ostream& os, const KernelMatrix& m, const OutputHeader& header) {
  write_csv_header(os, header);
  const int n = m.n();
  with_precision(m.precision_bits(), [&](auto zero) {
    using Real = decltype(zero);
    for (int j = 0; j < n; ++j) {
      std::vector<std::string> row;
      for (int k = 0; k < n; ++k) {
        if constexpr (std::is_same_v<Real, double>) row.push_back(format_double(m(j, k)));
        else row.push_back(static_cast<Real>(m.high_precision(j, k)).str(0, std::ios_base::scientific));
      }
      write_csv_row(os, row);
    }
    return 0;
  });
}

}  // namespace ginoe
