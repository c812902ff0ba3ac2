#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "triplekit/errors.hpp"
#include "triplekit/rng.hpp"
#include "triplekit/scalar.hpp"

namespace triplekit {

//============================================================================
// Dense matrix over a scalar backend, row-major storage.
//============================================================================

template <class S>
class Matrix {
public:
  using scalar_type = S;

  Matrix() : rows_(0), cols_(0) {}

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, ScalarTraits<S>::zero()) {
    if (rows == 0 || cols == 0) throw ShapeMismatch("matrix dimensions must be positive");
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
    return m;
  }

  // Matrix unit E_{pq}: single 1 at (row p, col q).
  static Matrix unit(std::size_t n, std::size_t p, std::size_t q) {
    Matrix m(n, n);
    m(p, q) = ScalarTraits<S>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<S>& data() { return data_; }
  const std::vector<S>& data() const { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
  std::size_t rows_, cols_;
  std::vector<S> data_;
};

namespace detail {
inline std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}
}  // namespace detail

//----------------------------------------------------------------------------
// Arithmetic
//----------------------------------------------------------------------------

template <class S>
Matrix<S> operator+(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("add " + detail::shape_str(a.rows(), a.cols()) + " vs " +
                        detail::shape_str(b.rows(), b.cols()));
  Matrix<S> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
  return c;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("sub " + detail::shape_str(a.rows(), a.cols()) + " vs " +
                        detail::shape_str(b.rows(), b.cols()));
  Matrix<S> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = a.data()[k] - b.data()[k];
  return c;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& a) {
  Matrix<S> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = -a.data()[k];
  return c;
}

template <class S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatch("mul " + detail::shape_str(a.rows(), a.cols()) + " vs " +
                        detail::shape_str(b.rows(), b.cols()));
  Matrix<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      S acc = ScalarTraits<S>::zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

template <class S>
Matrix<S> operator*(const S& s, const Matrix<S>& a) {
  Matrix<S> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.data().size(); ++k) c.data()[k] = s * a.data()[k];
  return c;
}

template <class S>
Matrix<S> transpose(const Matrix<S>& a) {
  Matrix<S> c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
  return c;
}

template <class S>
Matrix<S> conj(const Matrix<S>& a) {
  Matrix<S> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < c.data().size(); ++k)
    c.data()[k] = ScalarTraits<S>::conjugate(a.data()[k]);
  return c;
}

template <class S>
Matrix<S> conj_transpose(const Matrix<S>& a) {
  return conj(transpose(a));
}

//----------------------------------------------------------------------------
// Norms and comparison
//----------------------------------------------------------------------------

// Max-norm (largest entry magnitude), as a double estimate on the exact
// backend.
template <class S>
double max_abs(const Matrix<S>& a) {
  double m = 0.0;
  for (const S& s : a.data()) m = std::max(m, abs_approx(s));
  return m;
}

// Entrywise comparison under the library-wide policy: exact equality on the
// exact backend, rel_eps-relative max-norm comparison on floats.
template <class S>
bool matrix_close(const Matrix<S>& a, const Matrix<S>& b, const TolerancePolicy& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    return a == b;
  } else {
    double scale = std::max(max_abs(a), max_abs(b));
    double bound = tol.rel_eps * std::max(1.0, scale);
    for (std::size_t k = 0; k < a.data().size(); ++k)
      if (std::abs(a.data()[k] - b.data()[k]) > bound) return false;
    return true;
  }
}

// Max entry deviation as a double. Exactly 0.0 when the matrices are
// bit-equal on the exact backend.
template <class S>
double matrix_deviation(const Matrix<S>& a, const Matrix<S>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) {
    if constexpr (ScalarTraits<S>::is_exact) {
      if (!(a.data()[k] == b.data()[k])) m = std::max(m, abs_approx(a.data()[k] - b.data()[k]));
    } else {
      m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
  }
  return m;
}

//----------------------------------------------------------------------------
// Elimination: rank and inverse
//
// Exact backend: field elimination over Q(i); pivots are tested for exact
// nonzero-ness, so results are certificates. Float backend: partial
// pivoting; a pivot counts iff |pivot| > rank_eps * (largest magnitude of
// the input matrix).
//----------------------------------------------------------------------------

namespace detail {

template <class S>
std::size_t pick_pivot(const Matrix<S>& m, std::size_t col, std::size_t from_row, double floor,
                       bool& ok) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)floor;
    for (std::size_t r = from_row; r < m.rows(); ++r)
      if (!ScalarTraits<S>::exactly_zero(m(r, col))) {
        ok = true;
        return r;
      }
    ok = false;
    return from_row;
  } else {
    std::size_t best = from_row;
    double best_mag = -1.0;
    for (std::size_t r = from_row; r < m.rows(); ++r) {
      double mag = abs_approx(m(r, col));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    ok = best_mag > floor;
    return best;
  }
}

template <class S>
void swap_rows(Matrix<S>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

template <class S>
std::size_t rank(Matrix<S> a, const TolerancePolicy& tol = {}) {
  const double floor = tol.rank_eps * std::max(1.0, max_abs(a));
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    bool ok = false;
    std::size_t piv = detail::pick_pivot(a, col, r, floor, ok);
    if (!ok) continue;
    detail::swap_rows(a, r, piv);
    const S inv_p = ScalarTraits<S>::one() / a(r, col);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (ScalarTraits<S>::exactly_zero(a(i, col))) continue;
      S f = a(i, col) * inv_p;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return r;
}

template <class S>
Matrix<S> invert(const Matrix<S>& a, const TolerancePolicy& tol = {}) {
  if (!a.is_square()) throw ShapeMismatch("invert requires a square matrix");
  const std::size_t n = a.rows();
  const double floor = tol.rank_eps * std::max(1.0, max_abs(a));
  Matrix<S> w = a;
  Matrix<S> inv = Matrix<S>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    bool ok = false;
    std::size_t piv = detail::pick_pivot(w, col, col, floor, ok);
    if (!ok) throw Singular("invert: no usable pivot in column " + std::to_string(col));
    detail::swap_rows(w, col, piv);
    detail::swap_rows(inv, col, piv);
    const S inv_p = ScalarTraits<S>::one() / w(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      w(col, j) = inv_p * w(col, j);
      inv(col, j) = inv_p * inv(col, j);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      if (ScalarTraits<S>::exactly_zero(w(i, col))) continue;
      S f = w(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        w(i, j) = w(i, j) - f * w(col, j);
        inv(i, j) = inv(i, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

//----------------------------------------------------------------------------
// Random generation (seed-deterministic everywhere)
//----------------------------------------------------------------------------

template <class S>
Matrix<S> random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  Matrix<S> m(rows, cols);
  for (S& s : m.data()) s = ScalarTraits<S>::random_entry(rng);
  return m;
}

template <class S>
Matrix<S> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_matrix<S>(rows, cols, rng);
}

// Invertible draw by rejection. Exact backend rejects singular draws; float
// backend additionally rejects ill-conditioned ones so downstream float
// residuals stay far below rel_eps.
template <class S>
Matrix<S> random_invertible(std::size_t n, std::uint64_t seed, const TolerancePolicy& tol = {}) {
  if (n < 1) throw ShapeMismatch("random_invertible requires n >= 1");
  SplitMix64 rng(seed);
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Matrix<S> m = random_matrix<S>(n, n, rng);
    if constexpr (ScalarTraits<S>::is_exact) {
      if (rank(m, tol) == n) return m;
    } else {
      try {
        Matrix<S> mi = invert(m, tol);
        if (max_abs(mi) <= 32.0) return m;  // conditioning gate
      } catch (const Singular&) {
      }
    }
  }
  throw GenerationFailed("random_invertible: no acceptable draw in " +
                         std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace triplekit
