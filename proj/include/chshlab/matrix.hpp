#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chshlab {

using cplx = std::complex<double>;

/// Base class for every numeric-domain failure thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct InvalidObservable : Error { using Error::Error; };
struct DegenerateJunk : Error { using Error::Error; };

namespace detail {

inline void require_finite(const cplx& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("non-finite entry");
}

inline void require_positive_dim(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace detail

/// Dense complex column vector. Entries are stored contiguously and are
/// required to be finite.
class Vector {
 public:
  Vector() = default;

  explicit Vector(std::size_t dim) : v_(dim, cplx{0.0, 0.0}) {
    detail::require_positive_dim(dim, "vector dim");
  }

  Vector(std::initializer_list<cplx> entries) : v_(entries) {
    detail::require_positive_dim(v_.size(), "vector dim");
    for (const cplx& z : v_) detail::require_finite(z);
  }

  static Vector basis(std::size_t dim, std::size_t k) {
    Vector e(dim);
    if (k >= dim) throw DimensionMismatch("basis index out of range");
    e[k] = cplx{1.0, 0.0};
    return e;
  }

  std::size_t dim() const { return v_.size(); }

  cplx& operator[](std::size_t i) { return v_[i]; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  Vector& operator+=(const Vector& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
  }
  Vector& operator*=(const cplx& s) {
    for (cplx& z : v_) z *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const cplx& s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, const cplx& s) { return a *= s; }
  friend Vector operator-(Vector a) { return a *= cplx{-1.0, 0.0}; }

 private:
  void check_same_dim(const Vector& o) const {
    if (v_.size() != o.v_.size()) throw DimensionMismatch("vector dims differ");
  }

  std::vector<cplx> v_;
};

/// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {
    detail::require_positive_dim(rows, "matrix rows");
    detail::require_positive_dim(cols, "matrix cols");
  }

  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
      : Matrix(rows, cols) {
    if (entries.size() != a_.size())
      throw DimensionMismatch("entry count does not match rows*cols");
    std::size_t i = 0;
    for (const cplx& z : entries) {
      detail::require_finite(z);
      a_[i++] = z;
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx{1.0, 0.0};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const cplx& s) {
    for (cplx& z : a_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const cplx& s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, const cplx& s) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= cplx{-1.0, 0.0}; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.dim()) throw DimensionMismatch("matrix-vector shape mismatch");
    Vector w(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx acc{0.0, 0.0};
      for (std::size_t j = 0; j < a.cols_; ++j) acc += a(i, j) * v[j];
      w[i] = acc;
    }
    return w;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

/// Conjugate transpose.
inline Matrix dagger(const Matrix& a) {
  Matrix b(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b(j, i) = std::conj(a(i, j));
  return b;
}

/// Tensor product. Entry ((ia*rb+ib),(ja*cb+jb)) = A(ia,ja)*B(ib,jb).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cplx f = a(ia, ja);
      if (f == cplx{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          c(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return c;
}

inline Vector kron(const Vector& u, const Vector& w) {
  Vector v(u.dim() * w.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) v[i * w.dim() + j] = u[i] * w[j];
  return v;
}

/// Inner product, conjugate-linear in the first argument.
inline cplx inner(const Vector& u, const Vector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("inner product dims differ");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

inline double vec_norm(const Vector& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) acc += std::norm(v[i]);
  return std::sqrt(acc);
}

inline double frob_norm(const Matrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

/// |u><v|.
inline Matrix outer(const Vector& u, const Vector& v) {
  Matrix m(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

inline cplx trace(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of non-square matrix");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

/// Trace out the second tensor factor of a (dim_a*dim_b)-square matrix.
inline Matrix partial_trace_b(const Matrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b)
    throw DimensionMismatch("partial trace shape mismatch");
  Matrix r(dim_a, dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim_b; ++k) acc += m(i * dim_b + k, j * dim_b + k);
      r(i, j) = acc;
    }
  return r;
}

/// Trace out the first tensor factor.
inline Matrix partial_trace_a(const Matrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b)
    throw DimensionMismatch("partial trace shape mismatch");
  Matrix r(dim_b, dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < dim_a; ++i) acc += m(i * dim_b + k, i * dim_b + l);
      r(k, l) = acc;
    }
  return r;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("vector dims differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Relative Frobenius distance from the adjoint.
inline double hermiticity_residual(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermiticity check on non-square matrix");
  return frob_norm(m - dagger(m)) / std::max(1.0, frob_norm(m));
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return m.is_square() && hermiticity_residual(m) <= tol;
}

}  // namespace chshlab
