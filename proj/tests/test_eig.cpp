#include <catch2/catch_amalgamated.hpp>

#include "chshlab/canonical.hpp"
#include "chshlab/eig.hpp"
#include "chshlab/generators.hpp"

using namespace chshlab;

namespace {

double reconstruction_error(const Matrix& m, const SpectralDecomposition& d) {
  Matrix rec(m.rows(), m.cols());
  for (std::size_t k = 0; k < d.eigenvalues.size(); ++k)
    rec += outer(d.eigenvectors[k], d.eigenvectors[k]) * cplx{d.eigenvalues[k], 0.0};
  return frob_norm(rec - m);
}

double orthonormality_error(const SpectralDecomposition& d) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.eigenvectors.size(); ++i)
    for (std::size_t j = 0; j < d.eigenvectors.size(); ++j) {
      const cplx expected = (i == j) ? cplx{1, 0} : cplx{0, 0};
      worst = std::max(worst, std::abs(inner(d.eigenvectors[i], d.eigenvectors[j]) - expected));
    }
  return worst;
}

}  // namespace

TEST_CASE("eigendecomposition of the Pauli matrices", "[eig]") {
  SECTION("Z") {
    const auto d = hermitian_eig(pauli_z());
    REQUIRE(d.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(d.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(max_abs_diff(d.eigenvectors[0], ket0()) < 1e-14);
    REQUIRE(max_abs_diff(d.eigenvectors[1], ket1()) < 1e-14);
  }
  SECTION("X") {
    const auto d = hermitian_eig(pauli_x());
    const double h = 1.0 / sqrt2();
    REQUIRE(d.eigenvalues[0] == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(d.eigenvalues[1] == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(max_abs_diff(d.eigenvectors[0], Vector{h, h}) < 1e-14);
    REQUIRE(max_abs_diff(d.eigenvectors[1], Vector{h, -h}) < 1e-14);
  }
}

TEST_CASE("eigendecomposition of the canonical two-qubit operator", "[eig]") {
  const auto d = hermitian_eig(k_operator());
  const double top = 2.0 * sqrt2();
  REQUIRE(d.eigenvalues[0] == Catch::Approx(top).margin(1e-10));
  REQUIRE(d.eigenvalues[1] == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(d.eigenvalues[2] == Catch::Approx(0.0).margin(1e-10));
  REQUIRE(d.eigenvalues[3] == Catch::Approx(-top).margin(1e-10));
  REQUIRE(max_abs_diff(d.eigenvectors[0], bell_state(BellKind::PhiPlus)) < 1e-10);
  REQUIRE(max_abs_diff(d.eigenvectors[3], bell_state(BellKind::PsiMinus)) < 1e-10);
}

TEST_CASE("decomposition contract on random Hermitian inputs", "[eig]") {
  Rng rng(23);
  for (std::size_t n : {2, 3, 5, 8}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix g = rng.hermitian(n);
      const auto d = hermitian_eig(g);
      REQUIRE(reconstruction_error(g, d) < 1e-9 * std::max(1.0, frob_norm(g)));
      REQUIRE(orthonormality_error(d) < 1e-9);
      for (std::size_t k = 0; k + 1 < n; ++k)
        REQUIRE(d.eigenvalues[k] >= d.eigenvalues[k + 1]);
      for (std::size_t k = 0; k < n; ++k) {
        const Vector residual = g * d.eigenvectors[k] - d.eigenvectors[k] * cplx{d.eigenvalues[k], 0.0};
        REQUIRE(vec_norm(residual) < 1e-9 * std::max(1.0, frob_norm(g)));
      }
    }
  }
}

TEST_CASE("decomposition is deterministic", "[eig]") {
  Rng rng(29);
  const Matrix g = rng.hermitian(6);
  const auto d1 = hermitian_eig(g);
  const auto d2 = hermitian_eig(g);
  for (std::size_t k = 0; k < 6; ++k) {
    REQUIRE(d1.eigenvalues[k] == d2.eigenvalues[k]);
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(d1.eigenvectors[k][i] == d2.eigenvectors[k][i]);
  }
}

TEST_CASE("degenerate spectra get a reproducible vector order", "[eig]") {
  // Z (x) Z has two eigenvalues of multiplicity two.
  const Matrix zz = kron(pauli_z(), pauli_z());
  const auto d1 = hermitian_eig(zz);
  const auto d2 = hermitian_eig(zz);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) REQUIRE(d1.eigenvectors[k][i] == d2.eigenvectors[k][i]);
  REQUIRE(orthonormality_error(d1) < 1e-12);
}

TEST_CASE("phase convention makes the leading entry real positive", "[eig]") {
  Matrix m(2, 2);
  m(0, 0) = cplx{2.0, 0.0};
  m(0, 1) = cplx{0.0, 1.0};
  m(1, 0) = cplx{0.0, -1.0};
  m(1, 1) = cplx{2.0, 0.0};
  const auto d = hermitian_eig(m);
  for (const Vector& v : d.eigenvectors) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (std::abs(v[i]) > 1e-12) {
        REQUIRE(v[i].imag() == Catch::Approx(0.0).margin(1e-14));
        REQUIRE(v[i].real() > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("non-Hermitian input is rejected", "[eig]") {
  Matrix m(2, 2);
  m(0, 1) = cplx{1.0, 0.0};
  REQUIRE_THROWS_AS(hermitian_eig(m), NotHermitian);
  REQUIRE_THROWS_AS(hermitian_eig(Matrix(2, 3)), DimensionMismatch);
}

TEST_CASE("Hermitian matrix functions", "[eig]") {
  const auto abs_fn = [](double x) { return std::abs(x); };
  SECTION("absolute value of Z is the identity") {
    REQUIRE(max_abs_diff(herm_fun(pauli_z(), abs_fn), Matrix::identity(2)) < 1e-14);
  }
  SECTION("absolute value of 2Z is twice the identity") {
    REQUIRE(max_abs_diff(herm_fun(pauli_z() * cplx{2, 0}, abs_fn),
                         Matrix::identity(2) * cplx{2, 0}) < 1e-14);
  }
  SECTION("squaring the identity") {
    REQUIRE(max_abs_diff(herm_fun(Matrix::identity(2), [](double x) { return x * x; }),
                         Matrix::identity(2)) < 1e-14);
  }
  SECTION("identity function reconstructs the input") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix g = rng.hermitian(4);
      REQUIRE(frob_norm(herm_fun(g, [](double x) { return x; }) - g) < 1e-9);
    }
  }
  SECTION("non-Hermitian input is rejected") {
    Matrix m(2, 2);
    m(0, 1) = cplx{1.0, 0.0};
    REQUIRE_THROWS_AS(herm_fun(m, abs_fn), NotHermitian);
  }
}
