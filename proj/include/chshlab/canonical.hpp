#pragma once

#include <cmath>

#include "chshlab/matrix.hpp"

namespace chshlab {

inline double sqrt2() { return std::sqrt(2.0); }

inline Matrix pauli_z() { return Matrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
inline Matrix pauli_x() { return Matrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

/// (Z+X)/sqrt(2). Doubles as the circuit Hadamard gate; same matrix.
inline Matrix hadamard() {
  const double h = 1.0 / sqrt2();
  return Matrix(2, 2, {h, h, h, -h});
}

/// (Z-X)/sqrt(2).
inline Matrix hadamard_prime() {
  const double h = 1.0 / sqrt2();
  return Matrix(2, 2, {h, -h, -h, -h});
}

/// sin(pi/8) X + cos(pi/8) Z. Real symmetric involution conjugating the
/// Pauli pair onto the (H, H') pair: R Z R = H, R X R = H'.
inline Matrix rotation_r() {
  const double s = std::sin(M_PI / 8.0);
  const double c = std::cos(M_PI / 8.0);
  return Matrix(2, 2, {c, s, s, -c});
}

inline Vector ket0() { return Vector{1.0, 0.0}; }
inline Vector ket1() { return Vector{0.0, 1.0}; }

/// R|0> = (cos(pi/8), sin(pi/8)), the ancilla for the second party.
inline Vector aux_state() { return rotation_r() * ket0(); }

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Bell vectors in the computational basis |00>,|01>,|10>,|11>.
inline Vector bell_state(BellKind kind) {
  const double h = 1.0 / sqrt2();
  switch (kind) {
    case BellKind::PhiPlus: return Vector{h, 0.0, 0.0, h};
    case BellKind::PhiMinus: return Vector{h, 0.0, 0.0, -h};
    case BellKind::PsiPlus: return Vector{0.0, h, h, 0.0};
    case BellKind::PsiMinus: return Vector{0.0, h, -h, 0.0};
  }
  throw std::invalid_argument("unknown Bell state kind");
}

/// 4x4 change of basis whose columns are PhiPlus, PhiMinus, PsiPlus, PsiMinus.
inline Matrix bell_basis_matrix() {
  Matrix b(4, 4);
  const Vector cols[4] = {bell_state(BellKind::PhiPlus), bell_state(BellKind::PhiMinus),
                          bell_state(BellKind::PsiPlus), bell_state(BellKind::PsiMinus)};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) b(i, j) = cols[j][i];
  return b;
}

/// sqrt(2) (Z @ Z + X @ X): the two-qubit operator of the ideal strategy,
/// with spectrum {2 sqrt(2), 0, 0, -2 sqrt(2)}.
inline Matrix k_operator() {
  return (kron(pauli_z(), pauli_z()) + kron(pauli_x(), pauli_x())) * cplx{sqrt2(), 0.0};
}

struct CanonicalGates {
  Matrix z, x, h, h_prime, r, hadamard_gate;
  Vector ket0, ket1, aux;
  Vector bell_phi_plus, bell_phi_minus, bell_psi_plus, bell_psi_minus;
};

inline CanonicalGates canonical_gates() {
  return CanonicalGates{
      pauli_z(),
      pauli_x(),
      hadamard(),
      hadamard_prime(),
      rotation_r(),
      hadamard(),
      chshlab::ket0(),
      chshlab::ket1(),
      aux_state(),
      bell_state(BellKind::PhiPlus),
      bell_state(BellKind::PhiMinus),
      bell_state(BellKind::PsiPlus),
      bell_state(BellKind::PsiMinus),
  };
}

}  // namespace chshlab
