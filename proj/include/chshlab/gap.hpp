#pragma once

#include <cmath>

#include "chshlab/canonical.hpp"
#include "chshlab/eig.hpp"
#include "chshlab/matrix.hpp"

namespace chshlab {

/// |M| = sqrt(M^2) for Hermitian M, computed spectrally.
inline Matrix modulus(const Matrix& m, double tol = kDefaultHermTol) {
  return herm_fun(m, [](double x) { return std::abs(x); }, tol);
}

/// M/|M| with the kernel mapped to +1: eigenvalues within
/// 1e-10 * max(1, ||M||) of zero count as kernel. Always returns a
/// Hermitian involution; that is the convention's purpose.
inline Matrix sign_with_kernel_convention(const Matrix& m, double tol = kDefaultHermTol) {
  const SpectralDecomposition d = hermitian_eig(m, tol);
  double top = 0.0;
  for (double lam : d.eigenvalues) top = std::max(top, std::abs(lam));
  const double kernel_cut = 1e-10 * std::max(1.0, top);
  Matrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k) {
    const double lam = d.eigenvalues[k];
    const double f = (std::abs(lam) <= kernel_cut) ? 1.0 : (lam > 0.0 ? 1.0 : -1.0);
    r += outer(d.eigenvectors[k], d.eigenvectors[k]) * cplx{f, 0.0};
  }
  return r;
}

/// The B0 = B1 = Z configuration where the sign construction with the
/// kernel convention produces extracted operators that fail to anticommute.
struct CounterexampleReport {
  Matrix xprime_b;
  Matrix zprime_b;
  Matrix anticommutator;
  double anticommutator_norm = 0.0;
  bool claim_refuted = false;
};

inline CounterexampleReport reproduce_counterexample() {
  const Matrix b0 = pauli_z();
  const Matrix b1 = pauli_z();
  CounterexampleReport rep;
  rep.xprime_b = sign_with_kernel_convention(b0 + b1);
  rep.zprime_b = sign_with_kernel_convention(b0 - b1);
  rep.anticommutator = rep.xprime_b * rep.zprime_b + rep.zprime_b * rep.xprime_b;
  rep.anticommutator_norm = mat_op_norm(rep.anticommutator);
  rep.claim_refuted = rep.anticommutator_norm > 1e-6;
  return rep;
}

}  // namespace chshlab
