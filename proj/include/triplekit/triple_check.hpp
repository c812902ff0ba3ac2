#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "triplekit/jordan.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/rng.hpp"
#include "triplekit/scalar.hpp"
#include "triplekit/supermap.hpp"

namespace triplekit {

//============================================================================
// Decision procedures for the triple identities
//
//   Phi(ABA) = Phi(A)Phi(B)Phi(A)                      (two-sided form)
//   Phi({ABC}) = {Phi(A)Phi(B)Phi(C)},  {ABC} = (ABC+CBA)/2
//
// Both are decided by polarization over the real basis
// R = {E_pq} u {iE_pq} (2n^2 elements): a real-linear Phi satisfies the
// two-sided form for ALL A, B iff for all unordered pairs {U,W} in R and
// all V in R
//
//   Phi(UVW + WVU) = Phi(U)Phi(V)Phi(W) + Phi(W)Phi(V)Phi(U),
//
// because ABA is quadratic in A and linear in B. The left side reduces by
// matrix-unit calculus: with U = i^su E_{p1 q1} etc. and s = su+sv+sw,
// UVW = [q1==p2][q2==p3] i^s E_{p1 q3} and WVU = [q3==p2][q2==p1] i^s
// E_{p3 q1}, so Phi(UVW + WVU) is a signed sum of at most two stored basis
// images. On the exact backend a common-denominator lift moves the whole
// sweep into machine integers; a preflight bound check falls back to the
// generic rational sweep when the lift could overflow.
//============================================================================

namespace detail {

// Decoded basis element R_k: k < m is E_{p,q}, k >= m is i*E_{p,q}, with
// p = (k%m)%n, q = (k%m)/n.
struct BasisIdx {
  std::size_t p, q;
  unsigned s;  // 0 for E_pq, 1 for iE_pq
};

inline BasisIdx decode_basis(std::size_t k, std::size_t n) {
  const std::size_t m = n * n;
  const std::size_t a = k % m;
  return BasisIdx{a % n, a / n, static_cast<unsigned>(k / m)};
}

// Phi(i^s E_{ab}) as a signed slot into the image table: s mod 4 picks
// +real, +imag, -real, -imag.
struct ImageRef {
  std::size_t slot;
  int sign;
};

inline ImageRef phase_lookup(unsigned s, std::size_t a, std::size_t b, std::size_t n) {
  const std::size_t m = n * n;
  const std::size_t idx = a + b * n;
  switch (s % 4) {
    case 0: return {idx, +1};
    case 1: return {m + idx, +1};
    case 2: return {idx, -1};
    default: return {m + idx, -1};
  }
}

// The two potentially nonzero terms of Phi(UVW + WVU) for basis triples.
struct LhsTerms {
  std::optional<ImageRef> t1, t2;
};

inline LhsTerms lhs_terms(std::size_t u, std::size_t v, std::size_t w, std::size_t n) {
  const BasisIdx bu = decode_basis(u, n), bv = decode_basis(v, n), bw = decode_basis(w, n);
  const unsigned s = bu.s + bv.s + bw.s;
  LhsTerms out;
  if (bu.q == bv.p && bv.q == bw.p) out.t1 = phase_lookup(s, bu.p, bw.q, n);
  if (bw.q == bv.p && bv.q == bu.p) out.t2 = phase_lookup(s, bw.p, bu.q, n);
  return out;
}

// Generic sweep over any backend: image table + ordered product table, then
// the (u <= w, v) triple loop with the symbolic left side.
template <class S>
bool triple_sweep_generic(const SuperMap<S>& phi, const TolerancePolicy& tol) {
  const std::size_t n = phi.n();
  const std::size_t m = n * n, b = 2 * m;
  std::vector<Matrix<S>> g;
  g.reserve(b);
  for (std::size_t a = 0; a < m; ++a) g.push_back(phi.basis_image(a));
  for (std::size_t a = 0; a < m; ++a) g.push_back(phi.basis_image_imag(a));

  std::vector<Matrix<S>> prod;
  prod.reserve(b * b);
  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t v = 0; v < b; ++v) prod.push_back(g[u] * g[v]);

  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t w = u; w < b; ++w)
      for (std::size_t v = 0; v < b; ++v) {
        Matrix<S> rhs = prod[u * b + v] * g[w] + prod[w * b + v] * g[u];
        Matrix<S> lhs = Matrix<S>::zero(n, n);
        LhsTerms t = lhs_terms(u, v, w, n);
        for (const auto& ref : {t.t1, t.t2}) {
          if (!ref) continue;
          lhs = ref->sign > 0 ? lhs + g[ref->slot] : lhs - g[ref->slot];
        }
        if (!matrix_close(lhs, rhs, tol)) return false;
      }
  return true;
}

// Exact fast path: Gaussian-integer sweep after clearing denominators.
struct GaussInt {
  std::int64_t re, im;
};

// nullopt when the preflight bounds reject the lift (caller falls back).
inline std::optional<bool> triple_sweep_exact_fast(const SuperMap<GaussianRational>& phi) {
  const std::size_t n = phi.n();
  const std::size_t m = n * n, b = 2 * m;

  std::vector<Matrix<GaussianRational>> g;
  g.reserve(b);
  for (std::size_t a = 0; a < m; ++a) g.push_back(phi.basis_image(a));
  for (std::size_t a = 0; a < m; ++a) g.push_back(phi.basis_image_imag(a));

  mpz_class d = 1;
  for (const auto& mat : g)
    for (const auto& e : mat.data()) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.re.get_den().get_mpz_t());
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), e.im.get_den().get_mpz_t());
    }

  // Lift d*g to integer components, tracking the largest magnitude B0.
  mpz_class b0 = 0;
  std::vector<std::vector<GaussInt>> gt(b, std::vector<GaussInt>(m));
  {
    mpz_class q, val;
    for (std::size_t k = 0; k < b; ++k)
      for (std::size_t e = 0; e < m; ++e) {
        const GaussianRational& x = g[k].data()[e];
        GaussInt& out = gt[k][e];  // row-major, matching Matrix storage
        mpz_divexact(q.get_mpz_t(), d.get_mpz_t(), x.re.get_den().get_mpz_t());
        val = x.re.get_num() * q;
        if (!val.fits_slong_p()) return std::nullopt;
        out.re = val.get_si();
        if (abs(val) > b0) b0 = abs(val);
        mpz_divexact(q.get_mpz_t(), d.get_mpz_t(), x.im.get_den().get_mpz_t());
        val = x.im.get_num() * q;
        if (!val.fits_slong_p()) return std::nullopt;
        out.im = val.get_si();
        if (abs(val) > b0) b0 = abs(val);
      }
  }

  // Overflow preflight: pair products stay in int64, triple accumulations
  // and the d^2-scaled left side stay in int128.
  const mpz_class lim62 = mpz_class(1) << 62;
  const mpz_class lim125 = mpz_class(1) << 125;
  const long ln = static_cast<long>(n);
  if (!d.fits_slong_p()) return std::nullopt;
  if (2 * ln * b0 * b0 >= lim62) return std::nullopt;
  if (4 * ln * ln * b0 * b0 * b0 >= lim125) return std::nullopt;
  if (2 * d * d * b0 >= lim125) return std::nullopt;

  // Ordered product table P[u][v] = gt[u] * gt[v], flat layout.
  std::vector<GaussInt> prod(b * b * m);
  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t v = 0; v < b; ++v) {
      GaussInt* out = &prod[(u * b + v) * m];
      const auto& A = gt[u];
      const auto& B = gt[v];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t re = 0, im = 0;
          for (std::size_t k = 0; k < n; ++k) {
            const GaussInt& x = A[i * n + k];
            const GaussInt& y = B[k * n + j];
            re += x.re * y.re - x.im * y.im;
            im += x.re * y.im + x.im * y.re;
          }
          out[i * n + j] = {re, im};
        }
    }

  const __int128 d2 = static_cast<__int128>(d.get_si()) * d.get_si();

  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t w = u; w < b; ++w) {
      const auto& gu = gt[u];
      const auto& gw = gt[w];
      for (std::size_t v = 0; v < b; ++v) {
        const GaussInt* puv = &prod[(u * b + v) * m];
        const GaussInt* pwv = &prod[(w * b + v) * m];
        const LhsTerms t = lhs_terms(u, v, w, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            __int128 rre = 0, rim = 0;
            for (std::size_t k = 0; k < n; ++k) {
              const GaussInt& x = puv[i * n + k];
              const GaussInt& y = gw[k * n + j];
              rre += static_cast<__int128>(x.re) * y.re - static_cast<__int128>(x.im) * y.im;
              rim += static_cast<__int128>(x.re) * y.im + static_cast<__int128>(x.im) * y.re;
              const GaussInt& x2 = pwv[i * n + k];
              const GaussInt& y2 = gu[k * n + j];
              rre += static_cast<__int128>(x2.re) * y2.re - static_cast<__int128>(x2.im) * y2.im;
              rim += static_cast<__int128>(x2.re) * y2.im + static_cast<__int128>(x2.im) * y2.re;
            }
            __int128 lre = 0, lim = 0;
            for (const auto& ref : {t.t1, t.t2}) {
              if (!ref) continue;
              const GaussInt& e = gt[ref->slot][i * n + j];
              lre += ref->sign * d2 * e.re;
              lim += ref->sign * d2 * e.im;
            }
            if (lre != rre || lim != rim) return false;
          }
      }
    }
  return true;
}

}  // namespace detail

template <class S>
bool is_triple_morphism(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
  if constexpr (ScalarTraits<S>::is_exact) {
    if (auto fast = detail::triple_sweep_exact_fast(phi)) return *fast;
  }
  return detail::triple_sweep_generic(phi, tol);
}

// Symmetrized-product variant. Deliberately evaluated through apply() and
// dense sym_triple arithmetic rather than the symbolic calculus above, so
// the two verifiers can serve as cross-checks of one another.
template <class S>
bool is_sym_triple_morphism(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
  const std::size_t n = phi.n();
  const std::size_t m = n * n, b = 2 * m;
  const S iu = ScalarTraits<S>::imag_unit();

  std::vector<Matrix<S>> basis;
  basis.reserve(b);
  for (std::size_t a = 0; a < m; ++a) basis.push_back(Matrix<S>::unit(n, a % n, a / n));
  for (std::size_t a = 0; a < m; ++a) basis.push_back(iu * basis[a]);

  std::vector<Matrix<S>> img;
  img.reserve(b);
  for (std::size_t k = 0; k < b; ++k) img.push_back(phi.apply(basis[k]));

  // {UVW} is symmetric in U,W, so unordered pairs suffice here too.
  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t w = u; w < b; ++w)
      for (std::size_t v = 0; v < b; ++v) {
        Matrix<S> lhs = phi.apply(sym_triple(basis[u], basis[v], basis[w]));
        Matrix<S> rhs = sym_triple(img[u], img[v], img[w]);
        if (!matrix_close(lhs, rhs, tol)) return false;
      }
  return true;
}

// Randomized spot check of the raw two-sided identity, kept as an
// independent cross-check of the polarized decision.
template <class S>
bool verify_triple_samples(const SuperMap<S>& phi, std::size_t samples, std::uint64_t seed,
                           const TolerancePolicy& tol = {}) {
  const std::size_t n = phi.n();
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < samples; ++t) {
    Matrix<S> a = random_matrix<S>(n, n, rng);
    Matrix<S> b = random_matrix<S>(n, n, rng);
    Matrix<S> lhs = phi.apply(triple_aba(a, b));
    Matrix<S> fa = phi.apply(a);
    Matrix<S> rhs = fa * phi.apply(b) * fa;
    if (!matrix_close(lhs, rhs, tol)) return false;
  }
  return true;
}

}  // namespace triplekit
