#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "chshlab/canonical.hpp"
#include "chshlab/eig.hpp"
#include "chshlab/matrix.hpp"
#include "chshlab/strategy.hpp"

namespace chshlab {

/// Constant of the anticommutator estimate; every bound below derives from it.
inline double c_constant() { return 128.0 * sqrt2(); }

/// Error budget delta(eps) = eps + 4 sqrt(c eps).
inline double delta_of_epsilon(double eps) {
  return eps + 4.0 * std::sqrt(c_constant() * eps);
}

/// Controlled gate [[I, 0], [0, A]] on qubit (x) H.
inline Matrix control(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("control target must be square");
  const std::size_t d = a.rows();
  Matrix c(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) c(i, i) = cplx{1.0, 0.0};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) c(d + i, d + j) = a(i, j);
  return c;
}

namespace detail {

inline void require_valid_observable_pair(const Matrix& m0, const Matrix& m1, double tol) {
  if (!m0.is_square() || !m1.is_square() || m0.rows() != m1.rows())
    throw DimensionMismatch("observable pair must be square with equal dims");
  if (!validate_binary_observable(m0, tol).valid ||
      !validate_binary_observable(m1, tol).valid)
    throw InvalidObservable("extraction circuit requires binary observables");
}

/// |anc> (x) I : H -> qubit (x) H.
inline Matrix embed(const Vector& anc, std::size_t d) {
  Matrix e(2 * d, d);
  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t k = 0; k < d; ++k) e(q * d + k, k) = anc[q];
  return e;
}

}  // namespace detail

/// First party's extraction circuit C_{A1} (H (x) I) C_{A0} (H (x) I);
/// the rightmost factor acts first.
inline Matrix unitary_ua(const Matrix& a0, const Matrix& a1, double tol = kObservableTol) {
  detail::require_valid_observable_pair(a0, a1, tol);
  const Matrix hi = kron(hadamard(), Matrix::identity(a0.rows()));
  return control(a1) * hi * control(a0) * hi;
}

/// Second party's circuit is the same construction conjugated by the
/// rotation that carries the Pauli pair onto (H, H'):
///   U_B = (R (x) I) C_{B1} (H (x) I) C_{B0} (H (x) I) (R^dagger (x) I).
inline Matrix unitary_ub(const Matrix& b0, const Matrix& b1, double tol = kObservableTol) {
  const Matrix ri = kron(rotation_r(), Matrix::identity(b0.rows()));
  return ri * unitary_ua(b0, b1, tol) * dagger(ri);
}

/// V_A = U_A (|0> (x) I), an isometry H_A -> qubit (x) H_A.
inline Matrix build_va(const Matrix& a0, const Matrix& a1, double tol = kObservableTol) {
  return unitary_ua(a0, a1, tol) * detail::embed(ket0(), a0.rows());
}

/// V_B = U_B (|aux> (x) I) with |aux> = R|0>.
inline Matrix build_vb(const Matrix& b0, const Matrix& b1, double tol = kObservableTol) {
  return unitary_ub(b0, b1, tol) * detail::embed(aux_state(), b0.rows());
}

/// Permutation regrouping (qubit (x) H_A) (x) (qubit (x) H_B) into
/// (qubit (x) qubit) (x) (H_A (x) H_B): basis index
/// (qa*dimA + ha)*2*dimB + qb*dimB + hb maps to
/// (qa*2 + qb)*dimA*dimB + ha*dimB + hb.
inline Matrix reg_swap(std::size_t dim_a, std::size_t dim_b) {
  detail::require_positive_dim(dim_a, "dimA");
  detail::require_positive_dim(dim_b, "dimB");
  const std::size_t n = 4 * dim_a * dim_b;
  Matrix p(n, n);
  for (std::size_t qa = 0; qa < 2; ++qa)
    for (std::size_t ha = 0; ha < dim_a; ++ha)
      for (std::size_t qb = 0; qb < 2; ++qb)
        for (std::size_t hb = 0; hb < dim_b; ++hb) {
          const std::size_t in = (qa * dim_a + ha) * 2 * dim_b + qb * dim_b + hb;
          const std::size_t out = (qa * 2 + qb) * dim_a * dim_b + ha * dim_b + hb;
          p(out, in) = cplx{1.0, 0.0};
        }
  return p;
}

/// Everything the extraction isometries produce for one strategy, together
/// with the measured distances from the ideal Bell-pair structure.
struct ExtractionResult {
  double epsilon = 0.0;  // bias deficit
  double delta = 0.0;    // eps + 4 sqrt(c eps)
  Vector psi_extracted;  // regrouped (V_A (x) V_B) psi, unit norm
  Vector junk;           // normalized residual register, unit norm
  double projection_sq_norm = 0.0;
  double state_error = 0.0;
  double a0_error = 0.0;
  double a1_error = 0.0;
  double b0_error = 0.0;
  double b1_error = 0.0;
  double k_expectation = 0.0;
  double phys_ideal_gap = 0.0;
};

inline constexpr double kJunkDegeneracyThreshold = 1e-12;

/// Run the extraction circuits on a strategy and measure every distance the
/// rigidity statement bounds. Throws DegenerateJunk when the component of
/// the extracted state in the top eigenspace is too small to normalize.
inline ExtractionResult extract(const CHSHStrategy& s) {
  const std::size_t da = s.dim_a();
  const std::size_t db = s.dim_b();
  const std::size_t dab = da * db;

  const Matrix va = build_va(s.a0().matrix(), s.a1().matrix());
  const Matrix vb = build_vb(s.b0().matrix(), s.b1().matrix());
  const Matrix w = kron(va, vb);
  const Matrix p = reg_swap(da, db);

  const auto extract_vec = [&](const Vector& v) { return p * (w * v); };

  ExtractionResult r;
  r.epsilon = epsilon_deficit(s);
  r.delta = delta_of_epsilon(r.epsilon);
  r.psi_extracted = extract_vec(s.psi());

  // Coefficients of the extracted state in the Bell basis of the two
  // extracted qubits; the leading dimA*dimB block is the PhiPlus component.
  const Vector bell_coords =
      kron(dagger(bell_basis_matrix()), Matrix::identity(dab)) * r.psi_extracted;
  Vector phi_plus_block(dab);
  for (std::size_t i = 0; i < dab; ++i) phi_plus_block[i] = bell_coords[i];
  r.projection_sq_norm = inner(phi_plus_block, phi_plus_block).real();
  if (r.projection_sq_norm <= kJunkDegeneracyThreshold)
    throw DegenerateJunk("extracted state has no component along the top eigenspace");

  Vector junk = phi_plus_block * cplx{1.0 / std::sqrt(r.projection_sq_norm), 0.0};
  detail::phase_normalize(junk);
  r.junk = junk;

  const Vector phi_plus = bell_state(BellKind::PhiPlus);
  r.state_error = vec_norm(r.psi_extracted - kron(phi_plus, junk));

  const Matrix i2 = Matrix::identity(2);
  const Matrix ia = Matrix::identity(da);
  const Matrix ib = Matrix::identity(db);
  const auto operator_error = [&](const Matrix& physical_side, const Matrix& ideal_gate) {
    const Vector physical = extract_vec(physical_side * s.psi());
    const Vector ideal = kron(ideal_gate * phi_plus, junk);
    return vec_norm(physical - ideal);
  };
  r.a0_error = operator_error(kron(s.a0().matrix(), ib), kron(pauli_z(), i2));
  r.a1_error = operator_error(kron(s.a1().matrix(), ib), kron(pauli_x(), i2));
  r.b0_error = operator_error(kron(ia, s.b0().matrix()), kron(i2, hadamard()));
  r.b1_error = operator_error(kron(ia, s.b1().matrix()), kron(i2, hadamard_prime()));

  const Matrix k_full = kron(k_operator(), Matrix::identity(dab));
  const Vector k_psi = k_full * r.psi_extracted;
  r.k_expectation = inner(r.psi_extracted, k_psi).real();
  r.phys_ideal_gap = vec_norm(k_psi - extract_vec(chsh_operator(s) * s.psi()));
  return r;
}

/// One inequality of the proof chain: a measured quantity against its
/// closed-form budget. Lower bounds are stored in deficit form so that
/// satisfied always means actual <= bound.
struct BoundRecord {
  std::string name;
  double actual = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  bool small_eps_regime = false;
};

struct BoundReport {
  double epsilon = 0.0;
  double delta = 0.0;
  ExtractionResult extraction;
  std::vector<BoundRecord> records;

  bool all_satisfied() const {
    for (const BoundRecord& r : records)
      if (!r.satisfied) return false;
    return true;
  }
};

inline constexpr double kBoundSlack = 1e-12;
inline constexpr double kSmallEpsCutoff = 0.1;

/// Evaluate every inequality of the chain at the strategy's own deficit.
inline BoundReport verify_theorem(const CHSHStrategy& s) {
  BoundReport rep;
  rep.extraction = extract(s);
  const double eps = rep.extraction.epsilon;
  const double delta = rep.extraction.delta;
  rep.epsilon = eps;
  rep.delta = delta;

  const double c = c_constant();
  const double exact_side_bound = std::sqrt(delta / sqrt2());
  const double approx_side_bound = std::sqrt(c * eps) + exact_side_bound;
  const AnticommutatorExpectation anti = anticommutator_expectation(s);
  const bool small = eps <= kSmallEpsCutoff;

  const auto push = [&](std::string name, double actual, double bound) {
    BoundRecord r;
    r.name = std::move(name);
    r.actual = actual;
    r.bound = bound;
    r.satisfied = actual <= bound + kBoundSlack;
    r.small_eps_regime = small;
    rep.records.push_back(std::move(r));
  };

  push("alice_anticomm", anti.alice, c * eps);
  push("bob_anticomm", anti.bob, c * eps);
  push("phys_ideal_gap", rep.extraction.phys_ideal_gap, 4.0 * std::sqrt(c * eps));
  push("k_expectation_lb", 2.0 * sqrt2() - rep.extraction.k_expectation, delta);
  push("projection_lb", 1.0 - rep.extraction.projection_sq_norm, delta / (2.0 * sqrt2()));
  push("state_error", rep.extraction.state_error, exact_side_bound);
  push("a0_error", rep.extraction.a0_error, exact_side_bound);
  push("a1_error", rep.extraction.a1_error, approx_side_bound);
  push("b0_error", rep.extraction.b0_error, exact_side_bound);
  push("b1_error", rep.extraction.b1_error, approx_side_bound);
  return rep;
}

}  // namespace chshlab
