#pragma once

#include <cmath>
#include <utility>

#include "chshlab/canonical.hpp"
#include "chshlab/eig.hpp"
#include "chshlab/matrix.hpp"

namespace chshlab {

inline constexpr double kObservableTol = 1e-9;

/// Residuals of the two defining properties of a binary observable:
/// Hermiticity and squaring to the identity. Both are operator norms.
struct ValidationReport {
  double hermiticity_residual = 0.0;
  double involution_residual = 0.0;
  double tol = kObservableTol;
  bool valid = false;
};

inline ValidationReport validate_binary_observable(const Matrix& m,
                                                   double tol = kObservableTol) {
  if (!m.is_square()) throw DimensionMismatch("observable must be square");
  ValidationReport rep;
  rep.tol = tol;
  rep.hermiticity_residual = mat_op_norm(m - dagger(m));
  rep.involution_residual = mat_op_norm(m * m - Matrix::identity(m.rows()));
  rep.valid = rep.hermiticity_residual <= tol && rep.involution_residual <= tol;
  return rep;
}

/// A Hermitian involution, validated at construction.
class BinaryObservable {
 public:
  explicit BinaryObservable(Matrix m, double tol = kObservableTol)
      : m_(std::move(m)), report_(validate_binary_observable(m_, tol)) {
    if (!report_.valid)
      throw InvalidObservable("matrix is not a binary observable: hermiticity residual " +
                              std::to_string(report_.hermiticity_residual) +
                              ", involution residual " +
                              std::to_string(report_.involution_residual));
  }

  const Matrix& matrix() const { return m_; }
  const ValidationReport& report() const { return report_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  Matrix m_;
  ValidationReport report_;
};

/// A shared unit state on H_A (x) H_B together with two binary observables
/// per party. Validation happens once, here.
class CHSHStrategy {
 public:
  CHSHStrategy(std::size_t dim_a, std::size_t dim_b, Vector psi, Matrix a0, Matrix a1,
               Matrix b0, Matrix b1, double tol = kObservableTol)
      : dim_a_(dim_a),
        dim_b_(dim_b),
        psi_(std::move(psi)),
        a0_(std::move(a0), tol),
        a1_(std::move(a1), tol),
        b0_(std::move(b0), tol),
        b1_(std::move(b1), tol) {
    if (psi_.dim() != dim_a_ * dim_b_)
      throw DimensionMismatch("state dim must equal dimA*dimB");
    if (a0_.dim() != dim_a_ || a1_.dim() != dim_a_)
      throw DimensionMismatch("Alice observables must be dimA-square");
    if (b0_.dim() != dim_b_ || b1_.dim() != dim_b_)
      throw DimensionMismatch("Bob observables must be dimB-square");
    if (std::abs(vec_norm(psi_) - 1.0) > 1e-10)
      throw std::invalid_argument("shared state must be a unit vector");
  }

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const Vector& psi() const { return psi_; }
  const BinaryObservable& a0() const { return a0_; }
  const BinaryObservable& a1() const { return a1_; }
  const BinaryObservable& b0() const { return b0_; }
  const BinaryObservable& b1() const { return b1_; }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  Vector psi_;
  BinaryObservable a0_, a1_, b0_, b1_;
};

/// A0 @ B0 + A0 @ B1 + A1 @ B0 - A1 @ B1 from raw matrices; no validation.
inline Matrix chsh_operator(const Matrix& a0, const Matrix& a1, const Matrix& b0,
                            const Matrix& b1) {
  return kron(a0, b0) + kron(a0, b1) + kron(a1, b0) - kron(a1, b1);
}

inline Matrix chsh_operator(const CHSHStrategy& s) {
  return chsh_operator(s.a0().matrix(), s.a1().matrix(), s.b0().matrix(), s.b1().matrix());
}

/// Expectation of the CHSH operator in the shared state.
inline double bias(const CHSHStrategy& s) {
  return inner(s.psi(), chsh_operator(s) * s.psi()).real();
}

/// Residual of the sum-of-squares certificate for the quantum bound:
///   2 sqrt(2) I - CHSH = (P^2 + Q^2)/sqrt(2)
/// with P = (A0+A1)/sqrt(2) @ I - I @ B0 and Q = (A1-A0)/sqrt(2) @ I + I @ B1.
/// Zero (up to rounding) exactly when all four operators are involutions.
inline double tsirelson_sos_residual(const Matrix& a0, const Matrix& a1, const Matrix& b0,
                                     const Matrix& b1) {
  const std::size_t da = a0.rows();
  const std::size_t db = b0.rows();
  const Matrix ia = Matrix::identity(da);
  const Matrix ib = Matrix::identity(db);
  const cplx inv_sqrt2{1.0 / sqrt2(), 0.0};
  const Matrix p = kron((a0 + a1) * inv_sqrt2, ib) - kron(ia, b0);
  const Matrix q = kron((a1 - a0) * inv_sqrt2, ib) + kron(ia, b1);
  const Matrix lhs = Matrix::identity(da * db) * cplx{2.0 * sqrt2(), 0.0} -
                     chsh_operator(a0, a1, b0, b1);
  const Matrix rhs = (dagger(p) * p + dagger(q) * q) * inv_sqrt2;
  return mat_op_norm(lhs - rhs);
}

inline double tsirelson_sos_residual(const CHSHStrategy& s) {
  for (const BinaryObservable* obs : {&s.a0(), &s.a1(), &s.b0(), &s.b1()})
    if (!obs->report().valid)
      throw InvalidObservable("sum-of-squares identity requires valid observables");
  return tsirelson_sos_residual(s.a0().matrix(), s.a1().matrix(), s.b0().matrix(),
                                s.b1().matrix());
}

struct AnticommutatorExpectation {
  double alice = 0.0;
  double bob = 0.0;
};

/// <psi| {A0,A1}^2 @ I |psi> and <psi| I @ {B0,B1}^2 |psi>.
inline AnticommutatorExpectation anticommutator_expectation(const CHSHStrategy& s) {
  const Matrix anti_a =
      s.a0().matrix() * s.a1().matrix() + s.a1().matrix() * s.a0().matrix();
  const Matrix anti_b =
      s.b0().matrix() * s.b1().matrix() + s.b1().matrix() * s.b0().matrix();
  const Matrix lhs = kron(anti_a * anti_a, Matrix::identity(s.dim_b()));
  const Matrix rhs = kron(Matrix::identity(s.dim_a()), anti_b * anti_b);
  AnticommutatorExpectation e;
  e.alice = inner(s.psi(), lhs * s.psi()).real();
  e.bob = inner(s.psi(), rhs * s.psi()).real();
  return e;
}

/// Smallest eps with bias >= 2 sqrt(2) - eps, clamped at zero.
inline double epsilon_deficit(const CHSHStrategy& s) {
  return std::max(0.0, 2.0 * sqrt2() - bias(s));
}

}  // namespace chshlab
