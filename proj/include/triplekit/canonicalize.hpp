#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "triplekit/errors.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/scalar.hpp"
#include "triplekit/supermap.hpp"

namespace triplekit {

//============================================================================
// Canonical-form recovery: given a map that satisfies the triple identity,
// peel off sign, scalar automorphism, and transpose variant, then rebuild
// the similarity T column by column and certify it against every matrix
// unit. The final verification step makes the whole procedure
// self-certifying: a wrong branch decision cannot survive step (4).
//============================================================================

template <class S>
struct ClassifyReport {
  CanonicalSpec<S> spec;
  double residual;  // max-norm gap between input and rebuilt map, 0 exact
  std::vector<std::string> steps;
};

namespace detail {

// Reference entry for ratio extraction: first exact nonzero on the exact
// backend, dominant entry above the rank floor on floats.
template <class S>
std::optional<std::size_t> reference_entry(const Matrix<S>& a, const TolerancePolicy& tol) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    for (std::size_t e = 0; e < a.data().size(); ++e)
      if (!ScalarTraits<S>::exactly_zero(a.data()[e])) return e;
    return std::nullopt;
  } else {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t e = 0; e < a.data().size(); ++e) {
      double mag = abs_approx(a.data()[e]);
      if (mag > best_mag) {
        best_mag = mag;
        best = e;
      }
    }
    if (best_mag <= tol.rank_eps * std::max(1.0, max_abs(a))) return std::nullopt;
    return best;
  }
}

// Solve a = h*b entrywise; nullopt when no single scalar works.
template <class S>
std::optional<S> scalar_ratio(const Matrix<S>& a, const Matrix<S>& b, const TolerancePolicy& tol) {
  auto ref = reference_entry(b, tol);
  if (!ref) return std::nullopt;
  S h = a.data()[*ref] / b.data()[*ref];
  if (!matrix_close(a, h * b, tol)) return std::nullopt;
  return h;
}

template <class S>
bool units_multiplicative(const std::vector<Matrix<S>>& img, std::size_t n, bool anti,
                          const TolerancePolicy& tol) {
  // Unit products collapse: E_pq * E_rs = [q==r] E_ps, so the expected image
  // is either a stored unit image or zero.
  const Matrix<S> z = Matrix<S>::zero(n, n);
  for (std::size_t q1 = 0; q1 < n; ++q1)
    for (std::size_t p1 = 0; p1 < n; ++p1)
      for (std::size_t q2 = 0; q2 < n; ++q2)
        for (std::size_t p2 = 0; p2 < n; ++p2) {
          const Matrix<S>& ia = img[p1 + q1 * n];
          const Matrix<S>& ib = img[p2 + q2 * n];
          Matrix<S> rhs = anti ? ib * ia : ia * ib;
          const Matrix<S>& lhs = q1 == p2 ? img[p1 + q2 * n] : z;
          if (!matrix_close(lhs, rhs, tol)) return false;
        }
  return true;
}

}  // namespace detail

template <class S>
ClassifyReport<S> classify(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
  const std::size_t n = phi.n();
  const Matrix<S> id = Matrix<S>::identity(n);
  const S one = ScalarTraits<S>::one();
  const S iu = ScalarTraits<S>::imag_unit();
  std::vector<std::string> steps;

  // (1) Sign: the image of I must be +I or -I.
  Matrix<S> d = phi.apply(id);
  int c;
  if (matrix_close(d, id, tol))
    c = 1;
  else if (matrix_close(d, -id, tol))
    c = -1;
  else
    throw NotUnitalSign("image of identity is not +I or -I");
  steps.push_back(c == 1 ? "sign: +1" : "sign: -1");
  SuperMap<S> psi = (c == 1 ? one : -one) * phi;

  // (2) Scalar automorphism: psi(iI) = +iI keeps Id, -iI means entrywise
  // conjugation is baked in; strip it so psi becomes complex-linear.
  ScalarAuto sa;
  Matrix<S> si = psi.apply(iu * id);
  if (matrix_close(si, iu * id, tol))
    sa = ScalarAuto::Id;
  else if (matrix_close(si, -(iu * id), tol))
    sa = ScalarAuto::Conj;
  else
    throw UnsupportedScalarAuto("image of iI is not +iI or -iI");
  steps.push_back(sa == ScalarAuto::Id ? "scalar_auto: id" : "scalar_auto: conj");
  if (sa == ScalarAuto::Conj) psi = compose(psi, SuperMap<S>::conjugation(n));

  // (3) Variant: multiplicative on all unit pairs means Straight,
  // anti-multiplicative means Transpose (strip it); anything else breaks
  // the dichotomy.
  std::vector<Matrix<S>> img;
  img.reserve(n * n);
  for (std::size_t a = 0; a < n * n; ++a) img.push_back(psi.apply(Matrix<S>::unit(n, a % n, a / n)));
  Variant variant;
  if (detail::units_multiplicative(img, n, false, tol))
    variant = Variant::Straight;
  else if (detail::units_multiplicative(img, n, true, tol))
    variant = Variant::Transpose;
  else
    throw DichotomyViolation("unit images neither multiplicative nor anti-multiplicative");
  steps.push_back(variant == Variant::Straight ? "variant: straight" : "variant: transpose");
  if (variant == Variant::Transpose) {
    psi = compose(psi, SuperMap<S>::from_function(n, [](const Matrix<S>& a) { return transpose(a); }));
    img.clear();
    for (std::size_t a = 0; a < n * n; ++a)
      img.push_back(psi.apply(Matrix<S>::unit(n, a % n, a / n)));
  }

  // (4) Similarity recovery: v spans the range of psi(E_11); the columns
  // t_j = psi(E_j1) v then assemble T with psi = T (.) T^{-1}, up to the
  // scalar hidden in v. Certify on every unit.
  const Matrix<S>& p = img[0];
  std::optional<std::size_t> pcol;
  for (std::size_t j = 0; j < n && !pcol; ++j) {
    Matrix<S> col(n, 1);
    for (std::size_t i = 0; i < n; ++i) col(i, 0) = p(i, j);
    if (detail::reference_entry(col, tol)) pcol = j;
  }
  if (!pcol) throw RecoveryFailure("image of E_11 is zero");
  Matrix<S> v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = p(i, *pcol);

  Matrix<S> t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<S> tj = img[j] * v;  // img[j] = psi(E_{j,0}) since a = j + 0*n
    for (std::size_t i = 0; i < n; ++i) t(i, j) = tj(i, 0);
  }
  Matrix<S> ti = invert(t, tol);
  for (std::size_t a = 0; a < n * n; ++a) {
    Matrix<S> expect = t * Matrix<S>::unit(n, a % n, a / n) * ti;
    if (!matrix_close(img[a], expect, tol))
      throw RecoveryFailure("similarity does not reproduce unit images");
  }
  steps.push_back("recovery: similarity certified on all units");

  // (5) Deterministic projective representative.
  auto ref = detail::reference_entry(t, tol);
  if (!ref) throw RecoveryFailure("recovered similarity is zero");
  t = (one / t.data()[*ref]) * t;
  steps.push_back("normalize: entry " + std::to_string(*ref) + " set to 1");

  CanonicalSpec<S> spec{c, variant, sa, t};
  double residual = supermap_deviation(phi, from_canonical(spec, tol));
  return ClassifyReport<S>{std::move(spec), residual, std::move(steps)};
}

template <class S>
bool specs_equivalent(const CanonicalSpec<S>& a, const CanonicalSpec<S>& b,
                      const TolerancePolicy& tol = {}) {
  if (a.c != b.c || a.variant != b.variant || a.scalar_auto != b.scalar_auto) return false;
  if (a.T.rows() != b.T.rows() || a.T.cols() != b.T.cols()) return false;
  auto lambda = detail::scalar_ratio(a.T, b.T, tol);
  return lambda.has_value() && !ScalarTraits<S>::exactly_zero(*lambda);
}

// The induced scalar function: h with Phi(lambda P) = h * Phi(P) for
// rank-one tripotents P. Probed at E_11, E_22, and a non-diagonal rank-one
// idempotent; the probes must agree.
template <class S>
S extract_h(const SuperMap<S>& phi, const S& lambda, const TolerancePolicy& tol = {}) {
  const std::size_t n = phi.n();
  std::vector<Matrix<S>> probes;
  probes.push_back(Matrix<S>::unit(n, 0, 0));
  if (n >= 2) {
    probes.push_back(Matrix<S>::unit(n, 1, 1));
    probes.push_back(Matrix<S>::unit(n, 0, 0) + Matrix<S>::unit(n, 0, 1));
  }

  std::optional<S> h;
  for (const Matrix<S>& p : probes) {
    auto hp = detail::scalar_ratio(phi.apply(lambda * p), phi.apply(p), tol);
    if (!hp) throw InconsistentH("no scalar relates the probe images");
    if (h && !scalar_close(*h, *hp, tol, std::max(1.0, abs_approx(*h))))
      throw InconsistentH("probe-dependent scalar");
    if (!h) h = hp;
  }
  return *h;
}

}  // namespace triplekit
