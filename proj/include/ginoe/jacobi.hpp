#pragma once

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ginoe/errors.hpp"

namespace ginoe {

enum class JacobiOrdering {
  Cyclic,      // row-by-row sweep, one rotation at a time; the serial reference
  RoundRobin,  // tournament pairing, n/2 disjoint rotations per step applied in parallel
};

template <class Real>
struct SymEigen {
  std::vector<Real> values;   // unsorted
  std::vector<Real> vectors;  // column-major, vectors[i + n*j] is component i of vector j
  int sweeps = 0;
};

namespace detail {

// Diagonally pivoted Cholesky: A(perm, perm) = L L^T. Returns L column-major (lower part).
template <class Real>
std::vector<Real> pivoted_cholesky(std::vector<Real> a, int n, std::vector<int>& perm) {
  using std::sqrt;
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto at = [&](int i, int j) -> Real& { return a[i + static_cast<std::size_t>(n) * j]; };
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (at(i, i) > at(piv, piv)) piv = i;
    if (!(at(piv, piv) > 0)) throw NumericalError("cholesky: matrix is not positive definite at working precision");
    if (piv != k) {
      std::swap(perm[k], perm[piv]);
      for (int i = 0; i < n; ++i) std::swap(at(i, k), at(i, piv));
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
    }
    at(k, k) = sqrt(at(k, k));
    for (int i = k + 1; i < n; ++i) at(i, k) /= at(k, k);
    // Full trailing square stays symmetric so the next pivot swap sees current values.
    for (int j = k + 1; j < n; ++j)
      for (int i = k + 1; i < n; ++i) at(i, j) -= at(i, k) * at(j, k);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) at(i, j) = 0;
  return a;
}

template <class Real>
Real column_dot(const std::vector<Real>& w, int n, int p, int q) {
  const Real* x = &w[static_cast<std::size_t>(n) * p];
  const Real* y = &w[static_cast<std::size_t>(n) * q];
  Real s = 0;
  for (int k = 0; k < n; ++k) s += x[k] * y[k];
  return s;
}

// Orthogonalize columns p,q of w; false when they are already orthogonal to working precision.
// norm2 caches squared column norms and is updated in place.
template <class Real>
bool hestenes_rotate(std::vector<Real>& w, std::vector<Real>& norm2, int n, int p, int q, const Real& tol) {
  using std::abs;
  using std::sqrt;
  const Real apq = column_dot(w, n, p, q);
  if (apq == 0) return false;
  const Real& app = norm2[p];
  const Real& aqq = norm2[q];
  if (abs(apq) <= tol * sqrt(app * aqq)) return false;
  const Real zeta = (aqq - app) / (2 * apq);
  Real t = 1 / (abs(zeta) + sqrt(zeta * zeta + 1));
  if (zeta < 0) t = -t;
  const Real c = 1 / sqrt(t * t + 1);
  const Real s = t * c;
  Real* x = &w[static_cast<std::size_t>(n) * p];
  Real* y = &w[static_cast<std::size_t>(n) * q];
  for (int k = 0; k < n; ++k) {
    const Real xp = x[k], xq = y[k];
    x[k] = c * xp - s * xq;
    y[k] = s * xp + c * xq;
  }
  norm2[p] -= t * apq;
  norm2[q] += t * apq;
  return true;
}

}  // namespace detail

// Eigen-decomposition of a symmetric positive-definite matrix (column-major, n*n entries):
// pivoted Cholesky A = P L L^T P^T, then one-sided Jacobi rotations orthogonalize the columns of
// L, whose grading keeps the sweep count low and the small eigenvalues relatively accurate.
// Eigenvalues are the squared column norms; eigenvectors are the normalized columns mapped back through P.
template <class Real>
SymEigen<Real> jacobi_eigen(const std::vector<Real>& a, int n, JacobiOrdering ordering, int max_sweeps = 60) {
  using std::sqrt;
  const Real tol = std::numeric_limits<Real>::epsilon() * n;
  std::vector<int> perm;
  std::vector<Real> w = detail::pivoted_cholesky(a, n, perm);

  const int players = n + (n % 2);
  std::vector<int> ring(players);
  std::iota(ring.begin(), ring.end(), 0);
  std::vector<char> active(players / 2);

  bool rotated = true;
  int sweep = 0;
  std::vector<Real> norm2(n);
  for (; sweep < max_sweeps && rotated; ++sweep) {
    rotated = false;
    // Fresh norms each sweep so the cached updates never drift far.
    for (int j = 0; j < n; ++j) norm2[j] = detail::column_dot(w, n, j, j);
    if (ordering == JacobiOrdering::Cyclic) {
      for (int p = 0; p < n - 1; ++p)
        for (int q = p + 1; q < n; ++q)
          if (detail::hestenes_rotate(w, norm2, n, p, q, tol)) rotated = true;
    } else {
      const int pairs = players / 2;
      for (int round = 0; round + 1 < players; ++round) {
        // Pairs in one round touch disjoint columns.
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < pairs; ++i) {
          int p = ring[i], q = ring[players - 1 - i];
          if (p > q) std::swap(p, q);
          active[i] = q < n && detail::hestenes_rotate(w, norm2, n, p, q, tol);
        }
        for (int i = 0; i < pairs; ++i)
          if (active[i]) rotated = true;
        const int last = ring[players - 1];
        for (int i = players - 1; i > 1; --i) ring[i] = ring[i - 1];
        ring[1] = last;
      }
    }
  }
  if (rotated) {
    throw ConvergenceError("jacobi_eigen: no convergence within " + std::to_string(max_sweeps) + " sweeps", 0.0,
                           0.0);
  }

  SymEigen<Real> out;
  out.sweeps = sweep;
  out.values.resize(n);
  out.vectors.assign(static_cast<std::size_t>(n) * n, Real(0));
  for (int j = 0; j < n; ++j) {
    const Real norm2 = detail::column_dot(w, n, j, j);
    out.values[j] = norm2;
    const Real inv = 1 / sqrt(norm2);
    for (int i = 0; i < n; ++i)
      out.vectors[perm[i] + static_cast<std::size_t>(n) * j] = w[i + static_cast<std::size_t>(n) * j] * inv;
  }
  return out;
}

}  // namespace ginoe
