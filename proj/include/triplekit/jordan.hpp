#pragma once

#include <cstddef>
#include <vector>

#include "triplekit/errors.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/scalar.hpp"

namespace triplekit {

//============================================================================
// Jordan-triple toolkit: idempotent/tripotent predicates, triple products,
// the idempotent partial order, and tripotent splitting.
//============================================================================

namespace detail {
template <class S>
S half() {
  return ScalarTraits<S>::one() / ScalarTraits<S>::from_int(2);
}
}  // namespace detail

// Rank-one operator in functional form: acts as z -> f(z)*x, embeds as the
// outer product x*f (column times row). The Hilbert-space form x (x) y is
// obtained by conjugating the second vector at embed time. Construction
// allows zero vectors so degenerate candidates can still be scored;
// validate() enforces the rank-one invariant.
template <class S>
struct RankOneOperator {
  std::vector<S> x;  // column
  std::vector<S> f;  // row

  RankOneOperator(std::vector<S> x_, std::vector<S> f_) : x(std::move(x_)), f(std::move(f_)) {
    if (x.size() != f.size() || x.empty()) throw ShapeMismatch("rank-one vectors must match");
  }

  std::size_t n() const { return x.size(); }

  bool validate() const {
    bool xz = true, fz = true;
    for (const S& s : x) xz = xz && ScalarTraits<S>::exactly_zero(s);
    for (const S& s : f) fz = fz && ScalarTraits<S>::exactly_zero(s);
    return !xz && !fz;
  }

  Matrix<S> embed() const {
    Matrix<S> m(n(), n());
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) m(i, j) = x[i] * f[j];
    return m;
  }

  Matrix<S> embed_hilbert() const {
    Matrix<S> m(n(), n());
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j) m(i, j) = x[i] * ScalarTraits<S>::conjugate(f[j]);
    return m;
  }

  // f applied to a column vector.
  S pair(const std::vector<S>& z) const {
    if (z.size() != f.size()) throw ShapeMismatch("rank-one pairing length");
    S acc = ScalarTraits<S>::zero();
    for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * z[i];
    return acc;
  }
};

//----------------------------------------------------------------------------
// Triple products
//----------------------------------------------------------------------------

template <class S>
Matrix<S> triple_aba(const Matrix<S>& a, const Matrix<S>& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw ShapeMismatch("triple_aba requires square matrices of equal size");
  return a * b * a;
}

template <class S>
Matrix<S> sym_triple(const Matrix<S>& a, const Matrix<S>& b, const Matrix<S>& c) {
  if (!a.is_square() || a.rows() != b.rows() || a.rows() != c.rows() || !b.is_square() ||
      !c.is_square())
    throw ShapeMismatch("sym_triple requires square matrices of equal size");
  return detail::half<S>() * (a * b * c + c * b * a);
}

template <class S>
Matrix<S> block_compress(const Matrix<S>& p, const Matrix<S>& a) {
  if (!p.is_square() || !a.is_square() || p.rows() != a.rows())
    throw ShapeMismatch("block_compress requires square matrices of equal size");
  return p * a * p;
}

//----------------------------------------------------------------------------
// Predicates
//----------------------------------------------------------------------------

template <class S>
bool is_idempotent(const Matrix<S>& p, const TolerancePolicy& tol = {}) {
  if (!p.is_square()) return false;
  return matrix_close(p * p, p, tol);
}

template <class S>
bool is_tripotent(const Matrix<S>& r, const TolerancePolicy& tol = {}) {
  if (!r.is_square()) return false;
  return matrix_close(r * r * r, r, tol);
}

// Idempotent partial order: P <= Q iff PQ = QP = P.
template <class S>
bool leq(const Matrix<S>& p, const Matrix<S>& q, const TolerancePolicy& tol = {}) {
  if (!is_idempotent(p, tol)) throw NotIdempotent("leq: left argument");
  if (!is_idempotent(q, tol)) throw NotIdempotent("leq: right argument");
  return matrix_close(p * q, p, tol) && matrix_close(q * p, p, tol);
}

template <class S>
bool mutually_orthogonal(const Matrix<S>& p, const Matrix<S>& q, const TolerancePolicy& tol = {}) {
  if (!p.is_square() || !q.is_square() || p.rows() != q.rows())
    throw ShapeMismatch("mutually_orthogonal requires square matrices of equal size");
  Matrix<S> z = Matrix<S>::zero(p.rows(), p.cols());
  return matrix_close(p * q, z, tol) && matrix_close(q * p, z, tol);
}

//----------------------------------------------------------------------------
// Tripotent splitting
//
// R^3 = R makes R^2 idempotent; p1 = (R^2+R)/2 and p2 = (R^2-R)/2 are then
// mutually orthogonal idempotents with R = p1 - p2. No spectral computation
// needed, and the formula is exact in both backends.
//----------------------------------------------------------------------------

template <class S>
struct TripotentSplit {
  Matrix<S> p1;
  Matrix<S> p2;
};

template <class S>
TripotentSplit<S> tripotent_split(const Matrix<S>& r, const TolerancePolicy& tol = {}) {
  if (!is_tripotent(r, tol)) throw NotTripotent("tripotent_split");
  Matrix<S> r2 = r * r;
  const S h = detail::half<S>();
  return TripotentSplit<S>{h * (r2 + r), h * (r2 - r)};
}

}  // namespace triplekit
