#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "triplekit/errors.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/rng.hpp"
#include "triplekit/scalar.hpp"

namespace triplekit {

//============================================================================
// Real-linear maps on M_n(C) as (L, K) pairs:
//
//   Phi(A) = unvec(L * vec(A) + K * conj(vec(A)))
//
// with vec = column-stacking, vec(A)[i + j*n] = A(i,j). L carries the
// complex-linear part, K the conjugate-linear part.
//============================================================================

template <class S>
Matrix<S> vec(const Matrix<S>& a) {
  Matrix<S> v(a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v(i + j * a.rows(), 0) = a(i, j);
  return v;
}

template <class S>
Matrix<S> unvec(const Matrix<S>& v, std::size_t n) {
  if (v.cols() != 1 || v.rows() != n * n) throw ShapeMismatch("unvec expects an n^2 column");
  Matrix<S> a(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) a(i, j) = v(i + j * n, 0);
  return a;
}

template <class S>
class SuperMap {
public:
  using scalar_type = S;

  SuperMap(std::size_t n, Matrix<S> L, Matrix<S> K)
      : n_(n), L_(std::move(L)), K_(std::move(K)) {
    const std::size_t m = n * n;
    if (n < 1) throw ShapeMismatch("supermap dimension must be positive");
    if (L_.rows() != m || L_.cols() != m || K_.rows() != m || K_.cols() != m)
      throw ShapeMismatch("supermap parts must be n^2 x n^2");
  }

  static SuperMap identity(std::size_t n) {
    return SuperMap(n, Matrix<S>::identity(n * n), Matrix<S>::zero(n * n, n * n));
  }

  // Entrywise conjugation A -> conj(A).
  static SuperMap conjugation(std::size_t n) {
    return SuperMap(n, Matrix<S>::zero(n * n, n * n), Matrix<S>::identity(n * n));
  }

  static SuperMap scalar_multiple(std::size_t n, const S& s) {
    return SuperMap(n, s * Matrix<S>::identity(n * n), Matrix<S>::zero(n * n, n * n));
  }

  // Build from any real-linear callable f: Matrix -> Matrix by probing the
  // real basis {E_a, iE_a}. With La = vec(f(E_a)), Ka = vec(f(iE_a)):
  //   L[:,a] = (La - i*Ka)/2,  K[:,a] = (La + i*Ka)/2.
  template <class F>
  static SuperMap from_function(std::size_t n, F&& f) {
    const std::size_t m = n * n;
    Matrix<S> L(m, m), K(m, m);
    const S iu = ScalarTraits<S>::imag_unit();
    const S h = ScalarTraits<S>::one() / ScalarTraits<S>::from_int(2);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t p = 0; p < n; ++p) {
        const std::size_t a = p + q * n;
        Matrix<S> e = Matrix<S>::unit(n, p, q);
        Matrix<S> vre = vec(f(e));
        Matrix<S> vim = vec(f(iu * e));
        for (std::size_t r = 0; r < m; ++r) {
          L(r, a) = h * (vre(r, 0) - iu * vim(r, 0));
          K(r, a) = h * (vre(r, 0) + iu * vim(r, 0));
        }
      }
    return SuperMap(n, std::move(L), std::move(K));
  }

  std::size_t n() const { return n_; }
  const Matrix<S>& L() const { return L_; }
  const Matrix<S>& K() const { return K_; }

  Matrix<S> apply(const Matrix<S>& a) const {
    if (a.rows() != n_ || a.cols() != n_) throw ShapeMismatch("apply expects an n x n matrix");
    Matrix<S> v = vec(a);
    return unvec<S>(L_ * v + K_ * conj(v), n_);
  }

  // Images of the real basis, read straight off the columns:
  //   Phi(E_a) = unvec(L[:,a] + K[:,a]),  Phi(iE_a) = unvec(i*(L[:,a] - K[:,a])).
  Matrix<S> basis_image(std::size_t a) const {
    const std::size_t m = n_ * n_;
    Matrix<S> v(m, 1);
    for (std::size_t r = 0; r < m; ++r) v(r, 0) = L_(r, a) + K_(r, a);
    return unvec<S>(v, n_);
  }

  Matrix<S> basis_image_imag(std::size_t a) const {
    const std::size_t m = n_ * n_;
    const S iu = ScalarTraits<S>::imag_unit();
    Matrix<S> v(m, 1);
    for (std::size_t r = 0; r < m; ++r) v(r, 0) = iu * (L_(r, a) - K_(r, a));
    return unvec<S>(v, n_);
  }

  bool operator==(const SuperMap& o) const { return n_ == o.n_ && L_ == o.L_ && K_ == o.K_; }

private:
  std::size_t n_;
  Matrix<S> L_, K_;
};

template <class S>
SuperMap<S> operator*(const S& s, const SuperMap<S>& phi) {
  return SuperMap<S>(phi.n(), s * phi.L(), s * phi.K());
}

template <class S>
bool supermap_close(const SuperMap<S>& a, const SuperMap<S>& b, const TolerancePolicy& tol) {
  return a.n() == b.n() && matrix_close(a.L(), b.L(), tol) && matrix_close(a.K(), b.K(), tol);
}

template <class S>
double supermap_deviation(const SuperMap<S>& a, const SuperMap<S>& b) {
  return std::max(matrix_deviation(a.L(), b.L()), matrix_deviation(a.K(), b.K()));
}

// Composition respects conjugate-linearity bookkeeping:
//   (Phi o Psi): L = L1*L2 + K1*conj(K2),  K = L1*K2 + K1*conj(L2).
template <class S>
SuperMap<S> compose(const SuperMap<S>& phi, const SuperMap<S>& psi) {
  if (phi.n() != psi.n()) throw ShapeMismatch("compose requires equal dimensions");
  return SuperMap<S>(phi.n(), phi.L() * psi.L() + phi.K() * conj(psi.K()),
                     phi.L() * psi.K() + phi.K() * conj(psi.L()));
}

// Inverse via the doubled real-linear system on (v, conj v):
//   [[L, K], [conj K, conj L]]. Its inverse has the same block shape and the
// top blocks are the inverse map's (L, K).
template <class S>
SuperMap<S> inverse_of(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
  const std::size_t m = phi.n() * phi.n();
  Matrix<S> d(2 * m, 2 * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      d(i, j) = phi.L()(i, j);
      d(i, j + m) = phi.K()(i, j);
      d(i + m, j) = ScalarTraits<S>::conjugate(phi.K()(i, j));
      d(i + m, j + m) = ScalarTraits<S>::conjugate(phi.L()(i, j));
    }
  Matrix<S> di = invert(d, tol);
  Matrix<S> L(m, m), K(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      L(i, j) = di(i, j);
      K(i, j) = di(i, j + m);
    }
  return SuperMap<S>(phi.n(), std::move(L), std::move(K));
}

//----------------------------------------------------------------------------
// Canonical forms: A -> c * T * sigma(A) * T^{-1} with sigma drawn from
// {id, transpose, entrywise conj, conjugate transpose}.
//----------------------------------------------------------------------------

enum class Variant { Straight, Transpose };
enum class ScalarAuto { Id, Conj };

template <class S>
struct CanonicalSpec {
  int c;  // +1 or -1
  Variant variant;
  ScalarAuto scalar_auto;
  Matrix<S> T;
};

template <class S>
SuperMap<S> from_canonical(const CanonicalSpec<S>& spec, const TolerancePolicy& tol = {}) {
  if (spec.c != 1 && spec.c != -1) throw ParseError("canonical sign must be +1 or -1");
  const std::size_t n = spec.T.rows();
  Matrix<S> ti = invert(spec.T, tol);
  const S sign =
      spec.c == 1 ? ScalarTraits<S>::one() : -ScalarTraits<S>::one();
  return SuperMap<S>::from_function(n, [&](const Matrix<S>& a) {
    Matrix<S> s = spec.scalar_auto == ScalarAuto::Conj ? conj(a) : a;
    if (spec.variant == Variant::Transpose) s = transpose(s);
    return sign * (spec.T * s * ti);
  });
}

template <class S>
CanonicalSpec<S> random_canonical(std::size_t n, std::uint64_t seed,
                                  const TolerancePolicy& tol = {}) {
  SplitMix64 rng(seed);
  CanonicalSpec<S> spec{rng.next_bool() ? 1 : -1,
                        rng.next_bool() ? Variant::Straight : Variant::Transpose,
                        rng.next_bool() ? ScalarAuto::Id : ScalarAuto::Conj,
                        Matrix<S>::identity(n)};
  spec.T = random_invertible<S>(n, rng.fork(), tol);
  return spec;
}

}  // namespace triplekit
