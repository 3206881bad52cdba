#include <catch2/catch_amalgamated.hpp>

#include "chshlab/canonical.hpp"
#include "chshlab/eig.hpp"
#include "chshlab/strategy.hpp"

using namespace chshlab;

TEST_CASE("Bell state coordinates", "[canonical]") {
  const double h = 1.0 / sqrt2();
  REQUIRE(max_abs_diff(bell_state(BellKind::PhiPlus), Vector{h, 0, 0, h}) == 0.0);
  REQUIRE(max_abs_diff(bell_state(BellKind::PhiMinus), Vector{h, 0, 0, -h}) == 0.0);
  REQUIRE(max_abs_diff(bell_state(BellKind::PsiPlus), Vector{0, h, h, 0}) == 0.0);
  REQUIRE(max_abs_diff(bell_state(BellKind::PsiMinus), Vector{0, h, -h, 0}) == 0.0);
}

TEST_CASE("Bell states form an orthonormal basis", "[canonical]") {
  const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                             BellKind::PsiMinus};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cplx expected = (i == j) ? cplx{1, 0} : cplx{0, 0};
      REQUIRE(std::abs(inner(bell_state(kinds[i]), bell_state(kinds[j])) - expected) < 1e-15);
    }
}

TEST_CASE("canonical operator spectral action", "[canonical]") {
  const Matrix k = k_operator();
  const double top = 2.0 * sqrt2();

  SECTION("PhiPlus is the top eigenvector") {
    const Vector phi = bell_state(BellKind::PhiPlus);
    REQUIRE(vec_norm(k * phi - phi * cplx{top, 0}) < 1e-14);
  }
  SECTION("PhiMinus and PsiPlus are annihilated") {
    REQUIRE(vec_norm(k * bell_state(BellKind::PhiMinus)) < 1e-14);
    REQUIRE(vec_norm(k * bell_state(BellKind::PsiPlus)) < 1e-14);
  }
  SECTION("PsiMinus has the bottom eigenvalue") {
    const Vector psi = bell_state(BellKind::PsiMinus);
    REQUIRE(vec_norm(k * psi + psi * cplx{top, 0}) < 1e-14);
  }
  SECTION("K agrees with its four-term expansion") {
    const Matrix expanded = kron(pauli_z(), hadamard()) + kron(pauli_z(), hadamard_prime()) +
                            kron(pauli_x(), hadamard()) - kron(pauli_x(), hadamard_prime());
    REQUIRE(max_abs_diff(k, expanded) < 1e-12);
  }
}

TEST_CASE("rotation gate conjugates the Pauli pair onto the tilted pair", "[canonical]") {
  const Matrix r = rotation_r();
  REQUIRE(max_abs_diff(r * pauli_z() * dagger(r), hadamard()) < 1e-12);
  REQUIRE(max_abs_diff(r * pauli_x() * dagger(r), hadamard_prime()) < 1e-12);

  SECTION("action on |0>") {
    const Vector aux = rotation_r() * ket0();
    const Vector expected{std::cos(M_PI / 8.0), std::sin(M_PI / 8.0)};
    REQUIRE(max_abs_diff(aux, expected) < 1e-15);
    REQUIRE(max_abs_diff(aux, aux_state()) == 0.0);
  }
}

TEST_CASE("canonical gates are binary observables", "[canonical]") {
  for (const Matrix& g : {pauli_z(), pauli_x(), hadamard(), hadamard_prime(), rotation_r()}) {
    const auto rep = validate_binary_observable(g, 1e-12);
    REQUIRE(rep.valid);
    REQUIRE(max_abs_diff(g * dagger(g), Matrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("canonical pairs anticommute", "[canonical]") {
  const auto anticommutator = [](const Matrix& a, const Matrix& b) {
    return frob_norm(a * b + b * a);
  };
  REQUIRE(anticommutator(pauli_z(), pauli_x()) < 1e-12);
  REQUIRE(anticommutator(hadamard(), hadamard_prime()) < 1e-12);
}

TEST_CASE("Bell basis change is orthogonal", "[canonical]") {
  const Matrix b = bell_basis_matrix();
  REQUIRE(max_abs_diff(dagger(b) * b, Matrix::identity(4)) < 1e-15);
  REQUIRE(max_abs_diff(b * dagger(b), Matrix::identity(4)) < 1e-15);
}
