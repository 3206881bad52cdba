#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "chshlab/matrix.hpp"

namespace chshlab {

inline constexpr double kDefaultHermTol = 1e-9;

/// Eigenvalue/eigenvector pairs of a Hermitian matrix.
///
/// Eigenvalues are sorted non-increasing. Within a near-degenerate group
/// (gap <= 1e-10 * max(1, ||M||_F)) vectors are ordered lexicographically by
/// their (re, im) entry sequences after phase normalization, so the
/// decomposition is reproducible on degenerate spectra. Each vector is phase
/// normalized: its first entry of modulus > 1e-12 is real positive.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<Vector> eigenvectors;
};

namespace detail {

inline void phase_normalize(Vector& v) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const double m = std::abs(v[i]);
    if (m > 1e-12) {
      const cplx phase = std::conj(v[i]) / m;
      v *= phase;
      return;
    }
  }
}

inline bool lex_less(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

// One two-sided Jacobi rotation annihilating the (p,q) off-diagonal entry of
// the Hermitian working matrix `a`, accumulated into the eigenvector columns
// of `v`. The complex entry is first rotated onto the real axis, then a real
// Jacobi rotation is applied.
inline void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = std::conj(apq) / r;  // makes a(p,q)*phase real

  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();
  const double tau = (alpha - beta) / (2.0 * r);
  // Small-magnitude root of t^2 + 2*tau*t - 1 = 0.
  const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
  const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // Column update matrix restricted to (p,q):
  //   J[p][p] = c        J[p][q] = -s
  //   J[q][p] = s*phase  J[q][q] = c*phase
  const cplx jpp{c, 0.0};
  const cplx jpq{-s, 0.0};
  const cplx jqp = s * phase;
  const cplx jqq = c * phase;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {  // A <- A J
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = cplx{0.0, 0.0};
  a(q, p) = cplx{0.0, 0.0};
  a(p, p) = cplx{a(p, p).real(), 0.0};
  a(q, q) = cplx{a(q, q).real(), 0.0};

  for (std::size_t k = 0; k < n; ++k) {  // V <- V J
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

inline double offdiag_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Deterministic: identical input bytes give identical output bytes.
inline SpectralDecomposition hermitian_eig(const Matrix& m, double tol = kDefaultHermTol) {
  if (!m.is_square()) throw DimensionMismatch("hermitian_eig needs a square matrix");
  if (!is_hermitian(m, tol)) throw NotHermitian("matrix is not Hermitian within tolerance");

  const std::size_t n = m.rows();
  const double scale = std::max(1.0, frob_norm(m));

  // Work on the symmetrized copy so accumulated rounding cannot reintroduce
  // an anti-Hermitian part.
  Matrix a = (m + dagger(m)) * cplx{0.5, 0.0};
  Matrix v = Matrix::identity(n);

  const double target = 1e-14 * scale;
  const int max_sweeps = 100;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (detail::offdiag_norm(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }
  if (!converged && detail::offdiag_norm(a) > target)
    throw NoConvergence("Jacobi iteration did not reach tolerance");

  SpectralDecomposition d;
  d.eigenvalues.resize(n);
  d.eigenvectors.reserve(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> lam(n);
  for (std::size_t k = 0; k < n; ++k) lam[k] = a(k, k).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return lam[i] > lam[j]; });

  std::vector<Vector> vecs;
  vecs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, order[k]);
    detail::phase_normalize(col);
    vecs.push_back(std::move(col));
    d.eigenvalues[k] = lam[order[k]];
  }

  // Reorder near-degenerate groups lexicographically.
  const double tie_tol = 1e-10 * scale;
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && d.eigenvalues[lo] - d.eigenvalues[hi] <= tie_tol) ++hi;
    std::sort(vecs.begin() + static_cast<std::ptrdiff_t>(lo),
              vecs.begin() + static_cast<std::ptrdiff_t>(hi), detail::lex_less);
    lo = hi;
  }
  d.eigenvectors = std::move(vecs);
  return d;
}

/// Sum of f(lambda_k) |v_k><v_k| over the spectral decomposition of m.
inline Matrix herm_fun(const Matrix& m, const std::function<double(double)>& f,
                       double tol = kDefaultHermTol) {
  const SpectralDecomposition d = hermitian_eig(m, tol);
  Matrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k)
    r += outer(d.eigenvectors[k], d.eigenvectors[k]) * cplx{f(d.eigenvalues[k]), 0.0};
  return r;
}

/// Operator norm (largest singular value) via the top eigenvalue of M^dagger M.
inline double mat_op_norm(const Matrix& m, double tol = kDefaultHermTol) {
  const Matrix gram = dagger(m) * m;
  const SpectralDecomposition d = hermitian_eig(gram, tol);
  const double top = d.eigenvalues.empty() ? 0.0 : std::max(0.0, d.eigenvalues.front());
  return std::sqrt(top);
}

}  // namespace chshlab
