#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "chshlab/gap.hpp"
#include "chshlab/strategy.hpp"

namespace chshlab {

/// Seeded uniform source. mt19937_64 raw draws are fixed by the standard and
/// the mapping to doubles is explicit, so the stream is identical on every
/// platform; the std distributions are not and must stay out of this file.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1).
  double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double pm1() { return 2.0 * u01() - 1.0; }

  cplx complex_pm1() {
    const double re = pm1();
    const double im = pm1();
    return cplx{re, im};
  }

  Matrix hermitian(std::size_t n) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = complex_pm1();
    return (g + dagger(g)) * cplx{0.5, 0.0};
  }

  /// Traceless seeded Hermitian. Indefinite for n >= 2, so its sign map is
  /// never +-I; strategies built from it stay out of the classical basin of
  /// the see-saw iteration.
  Matrix traceless_hermitian(std::size_t n) {
    Matrix g = hermitian(n);
    const cplx shift = trace(g) / cplx{static_cast<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) g(i, i) -= shift;
    return g;
  }

  Vector unit_vector(std::size_t n) {
    Vector v(n);
    double norm_sq = 0.0;
    while (norm_sq < 1e-12) {  // reject the measure-zero near-null draw
      for (std::size_t i = 0; i < n; ++i) v[i] = complex_pm1();
      norm_sq = inner(v, v).real();
    }
    return v * cplx{1.0 / std::sqrt(norm_sq), 0.0};
  }

 private:
  std::mt19937_64 eng_;
};

enum class StrategyKind { Canonical, Rotated, Noisy, Random, Degenerate };

/// Construction recipe for one strategy; the unit the CLI parses.
struct StrategySpec {
  StrategyKind kind = StrategyKind::Canonical;
  double theta_a = 0.0;  // Rotated
  double theta_b = 0.0;
  std::uint64_t seed = 0;  // Noisy, Random
  double magnitude = 0.0;  // Noisy
  std::size_t dim_a = 2;   // Random
  std::size_t dim_b = 2;
  std::string name;  // Degenerate
};

/// The standard EPR strategy: PhiPlus with (Z, X) and (H, H').
inline CHSHStrategy canonical_strategy() {
  return CHSHStrategy(2, 2, bell_state(BellKind::PhiPlus), pauli_z(), pauli_x(),
                      hadamard(), hadamard_prime());
}

namespace detail {

/// Real rotation by theta about the Y axis: exp(-i theta Y / 2).
inline Matrix y_rotation(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Matrix(2, 2, {c, -s, s, c});
}

inline Matrix conjugate(const Matrix& u, const Matrix& m) { return u * m * dagger(u); }

}  // namespace detail

/// Canonical strategy with each party's observables conjugated by a local
/// Y rotation; the shared state stays PhiPlus.
inline CHSHStrategy rotated_strategy(double theta_a, double theta_b) {
  const Matrix ua = detail::y_rotation(theta_a);
  const Matrix ub = detail::y_rotation(theta_b);
  return CHSHStrategy(2, 2, bell_state(BellKind::PhiPlus),
                      detail::conjugate(ua, pauli_z()), detail::conjugate(ua, pauli_x()),
                      detail::conjugate(ub, hadamard()),
                      detail::conjugate(ub, hadamard_prime()));
}

/// Canonical strategy perturbed by seeded Hermitian noise of the given
/// magnitude; observables are snapped back to involutions by the sign map.
inline CHSHStrategy noisy_strategy(std::uint64_t seed, double magnitude) {
  if (magnitude < 0.0) throw std::invalid_argument("noise magnitude must be >= 0");
  Rng rng(seed);
  const auto perturb = [&](const Matrix& base) {
    return sign_with_kernel_convention(base + rng.hermitian(2) * cplx{magnitude, 0.0});
  };
  const Matrix a0 = perturb(pauli_z());
  const Matrix a1 = perturb(pauli_x());
  const Matrix b0 = perturb(hadamard());
  const Matrix b1 = perturb(hadamard_prime());
  Vector psi = bell_state(BellKind::PhiPlus) + rng.unit_vector(4) * cplx{magnitude, 0.0};
  psi *= cplx{1.0 / vec_norm(psi), 0.0};
  return CHSHStrategy(2, 2, psi, a0, a1, b0, b1);
}

/// Fully random valid strategy: sign-snapped seeded traceless Hermitian
/// observables and a seeded random unit state. Bit-identical per (dims, seed).
inline CHSHStrategy random_strategy(std::size_t dim_a, std::size_t dim_b,
                                    std::uint64_t seed) {
  if (dim_a < 2 || dim_b < 2) throw std::invalid_argument("random strategy needs dims >= 2");
  Rng rng(seed);
  const Matrix a0 = sign_with_kernel_convention(rng.traceless_hermitian(dim_a));
  const Matrix a1 = sign_with_kernel_convention(rng.traceless_hermitian(dim_a));
  const Matrix b0 = sign_with_kernel_convention(rng.traceless_hermitian(dim_b));
  const Matrix b1 = sign_with_kernel_convention(rng.traceless_hermitian(dim_b));
  return CHSHStrategy(dim_a, dim_b, rng.unit_vector(dim_a * dim_b), a0, a1, b0, b1);
}

/// Named boundary configurations.
///   psi-minus:     canonical observables with the PsiMinus state
///   classical:     all observables Z, state |00>
///   bob-collapsed: canonical Alice, B0 = B1 = Z, state PhiPlus
inline CHSHStrategy degenerate_strategy(const std::string& name) {
  if (name == "psi-minus")
    return CHSHStrategy(2, 2, bell_state(BellKind::PsiMinus), pauli_z(), pauli_x(),
                        hadamard(), hadamard_prime());
  if (name == "classical") {
    Vector psi(4);
    psi[0] = cplx{1.0, 0.0};
    return CHSHStrategy(2, 2, psi, pauli_z(), pauli_z(), pauli_z(), pauli_z());
  }
  if (name == "bob-collapsed")
    return CHSHStrategy(2, 2, bell_state(BellKind::PhiPlus), pauli_z(), pauli_x(),
                        pauli_z(), pauli_z());
  throw std::invalid_argument("unknown degenerate strategy: " + name);
}

inline CHSHStrategy make_strategy(const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::Canonical: return canonical_strategy();
    case StrategyKind::Rotated: return rotated_strategy(spec.theta_a, spec.theta_b);
    case StrategyKind::Noisy: return noisy_strategy(spec.seed, spec.magnitude);
    case StrategyKind::Random: return random_strategy(spec.dim_a, spec.dim_b, spec.seed);
    case StrategyKind::Degenerate: return degenerate_strategy(spec.name);
  }
  throw std::invalid_argument("unknown strategy kind");
}

struct SeesawTrace {
  std::vector<double> iterations;  // bias after each full round, [0] = start
  bool converged = false;
  CHSHStrategy final;
};

/// Alternating bias maximization: state to the top eigenvector of the CHSH
/// operator, then each observable to the sign of its Hermitian environment
/// matrix. Every half-step is a constrained maximizer, so the bias never
/// decreases. Stops when one full round gains less than tol.
inline SeesawTrace seesaw_optimize(const CHSHStrategy& s0, int max_iters = 50,
                                   double tol = 1e-12) {
  Vector psi = s0.psi();
  Matrix a0 = s0.a0().matrix();
  Matrix a1 = s0.a1().matrix();
  Matrix b0 = s0.b0().matrix();
  Matrix b1 = s0.b1().matrix();
  const std::size_t da = s0.dim_a();
  const std::size_t db = s0.dim_b();
  const Matrix ia = Matrix::identity(da);
  const Matrix ib = Matrix::identity(db);

  const auto current_bias = [&]() {
    return inner(psi, chsh_operator(a0, a1, b0, b1) * psi).real();
  };
  const auto symmetrize = [](const Matrix& m) { return (m + dagger(m)) * cplx{0.5, 0.0}; };

  SeesawTrace trace{{}, false, s0};
  trace.iterations.push_back(current_bias());

  for (int iter = 0; iter < max_iters; ++iter) {
    psi = hermitian_eig(chsh_operator(a0, a1, b0, b1)).eigenvectors.front();

    const Matrix rho = outer(psi, psi);
    a0 = sign_with_kernel_convention(
        symmetrize(partial_trace_b(kron(ia, b0 + b1) * rho, da, db)));
    a1 = sign_with_kernel_convention(
        symmetrize(partial_trace_b(kron(ia, b0 - b1) * rho, da, db)));
    b0 = sign_with_kernel_convention(
        symmetrize(partial_trace_a(kron(a0 + a1, ib) * rho, da, db)));
    b1 = sign_with_kernel_convention(
        symmetrize(partial_trace_a(kron(a0 - a1, ib) * rho, da, db)));

    const double previous = trace.iterations.back();
    trace.iterations.push_back(current_bias());
    if (trace.iterations.back() - previous < tol) {
      trace.converged = true;
      break;
    }
  }

  trace.final = CHSHStrategy(da, db, psi, a0, a1, b0, b1);
  return trace;
}

}  // namespace chshlab
