#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "triplekit/errors.hpp"
#include "triplekit/jordan.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/rng.hpp"
#include "triplekit/scalar.hpp"
#include "triplekit/supermap.hpp"
#include "triplekit/triple_check.hpp"

namespace triplekit {

//============================================================================
// Lab: executable checks of the structural facts the rest of the library
// leans on. Five mutually annihilating rank-1 tripotents exist in M_3; no
// four exist in M_2 (probed by calibrated randomized search); the
// compression chain that drives additivity; the dimension-1 multiplicative
// non-additive bijection; Jordan law implies triple law.
//============================================================================

struct ViolationScore {
  double value;
};

template <class S>
struct QuadrupleCandidate {
  RankOneOperator<S> q1, q2, q3, q4;
};

//----------------------------------------------------------------------------
// The five-tripotent configuration in M_3: with x,y,z the standard basis,
//   (x+y)(x)x,  y(x)(x+y),  (1/2)(x-y)(x)(x-y),  z(x)(x+z),  (x-z)(x)z,
// where a(x)b is the rank-one a per Hilbert convention (second slot
// conjugated; vacuous here, all entries real).
//----------------------------------------------------------------------------

template <class S>
std::vector<RankOneOperator<S>> five_tripotent_operators() {
  using T = ScalarTraits<S>;
  const S o = T::one(), z = T::zero(), h = o / T::from_int(2);
  std::vector<RankOneOperator<S>> ops;
  ops.push_back(RankOneOperator<S>({o, o, z}, {o, z, z}));
  ops.push_back(RankOneOperator<S>({z, o, z}, {o, o, z}));
  ops.push_back(RankOneOperator<S>({h, -h, z}, {o, -o, z}));
  ops.push_back(RankOneOperator<S>({z, z, o}, {o, z, o}));
  ops.push_back(RankOneOperator<S>({o, z, -o}, {z, z, o}));
  return ops;
}

template <class S>
std::vector<Matrix<S>> five_tripotents() {
  std::vector<Matrix<S>> out;
  for (const auto& r : five_tripotent_operators<S>()) out.push_back(r.embed_hilbert());
  return out;
}

// First three of the family live inside the top-left 2x2 block; restricted
// to C^2 they witness that THREE mutually annihilating rank-1 tripotents do
// fit in M_2.
template <class S>
std::vector<RankOneOperator<S>> m2_relaxation_witness() {
  using T = ScalarTraits<S>;
  const S o = T::one(), z = T::zero(), h = o / T::from_int(2);
  std::vector<RankOneOperator<S>> ops;
  ops.push_back(RankOneOperator<S>({o, o}, {o, z}));
  ops.push_back(RankOneOperator<S>({z, o}, {o, o}));
  ops.push_back(RankOneOperator<S>({h, -h}, {o, -o}));
  return ops;
}

//----------------------------------------------------------------------------
// Constraint scoring
//----------------------------------------------------------------------------

namespace detail {

// Double-valued residual that is 0 exactly when the matrix is exactly zero;
// exact-backend nonzeros are clamped away from 0 even if tiny.
template <class S>
double residual_norm(const Matrix<S>& a) {
  if constexpr (ScalarTraits<S>::is_exact) {
    bool zero = true;
    for (const S& s : a.data()) zero = zero && ScalarTraits<S>::exactly_zero(s);
    if (zero) return 0.0;
    return std::max(max_abs(a), 1e-300);
  } else {
    return max_abs(a);
  }
}

template <class S>
double residual_scalar(const S& s) {
  if constexpr (ScalarTraits<S>::is_exact) {
    if (ScalarTraits<S>::exactly_zero(s)) return 0.0;
    return std::max(abs_approx(s), 1e-300);
  } else {
    return abs_approx(s);
  }
}

}  // namespace detail

// Max residual over: tripotency of each member, the rank-one tripotent
// certificate (f.x)^2 = 1 (which also sinks zero and nilpotent candidates),
// and every ordered annihilation Q_i Q_j Q_i = 0, i != j.
template <class S>
ViolationScore check_family(const std::vector<RankOneOperator<S>>& qs,
                            const TolerancePolicy& tol = {}) {
  (void)tol;
  const S one = ScalarTraits<S>::one();
  double worst = 0.0;
  std::vector<Matrix<S>> m;
  m.reserve(qs.size());
  for (const auto& q : qs) m.push_back(q.embed());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    worst = std::max(worst, detail::residual_norm(m[i] * m[i] * m[i] - m[i]));
    S pairing = qs[i].pair(qs[i].x);
    worst = std::max(worst, detail::residual_scalar(pairing * pairing - one));
    for (std::size_t j = 0; j < qs.size(); ++j) {
      if (i == j) continue;
      worst = std::max(worst, detail::residual_norm(m[i] * m[j] * m[i]));
    }
  }
  return ViolationScore{worst};
}

template <class S>
ViolationScore check_quadruple(const QuadrupleCandidate<S>& cand, const TolerancePolicy& tol = {}) {
  return check_family<S>({cand.q1, cand.q2, cand.q3, cand.q4}, tol);
}

//----------------------------------------------------------------------------
// Randomized M_2 quadruple search. Slots start as random unit vectors, then
// coordinate descent on the raw real coordinates (so the search is not
// confined to unit spheres). Deterministic per seed. The floor below is a
// frozen regression value: over 1e5 trials the best score observed stays
// above it, consistent with no valid quadruple existing.
//----------------------------------------------------------------------------

inline constexpr double kM2ViolationFloor = 0.05;

struct M2SearchResult {
  QuadrupleCandidate<ComplexF> best;
  ViolationScore score;
};

namespace detail {

inline std::vector<ComplexF> random_unit_c2(SplitMix64& rng) {
  for (;;) {
    std::vector<ComplexF> v{{rng.next_symmetric(), rng.next_symmetric()},
                            {rng.next_symmetric(), rng.next_symmetric()}};
    double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    if (norm < 1e-3) continue;
    v[0] /= norm;
    v[1] /= norm;
    return v;
  }
}

inline QuadrupleCandidate<ComplexF> candidate_from_slots(
    const std::vector<std::vector<ComplexF>>& s) {
  return QuadrupleCandidate<ComplexF>{RankOneOperator<ComplexF>(s[0], s[1]),
                                      RankOneOperator<ComplexF>(s[2], s[3]),
                                      RankOneOperator<ComplexF>(s[4], s[5]),
                                      RankOneOperator<ComplexF>(s[6], s[7])};
}

}  // namespace detail

inline M2SearchResult m2_quadruple_search(std::size_t trials, std::uint64_t seed,
                                          const TolerancePolicy& tol = {}) {
  if (trials < 1) throw GenerationFailed("m2_quadruple_search requires trials >= 1");
  SplitMix64 rng(seed);
  std::vector<std::vector<ComplexF>> best(8), cur(8);
  double best_score = -1.0;
  for (std::size_t t = 0; t < trials; ++t) {
    for (auto& slot : cur) slot = detail::random_unit_c2(rng);
    double s = check_quadruple(detail::candidate_from_slots(cur), tol).value;
    if (best_score < 0.0 || s < best_score) {
      best_score = s;
      best = cur;
    }
  }

  // Coordinate descent over the 32 real coordinates, shrinking steps.
  auto eval = [&](const std::vector<std::vector<ComplexF>>& s) {
    return check_quadruple(detail::candidate_from_slots(s), tol).value;
  };
  double step = 0.1;
  while (step > 1e-7) {
    bool improved = false;
    for (std::size_t slot = 0; slot < 8; ++slot)
      for (std::size_t e = 0; e < 2; ++e)
        for (int part = 0; part < 2; ++part)
          for (double delta : {step, -step}) {
            auto trial = best;
            ComplexF& c = trial[slot][e];
            c += part == 0 ? ComplexF{delta, 0.0} : ComplexF{0.0, delta};
            double s = eval(trial);
            if (s < best_score) {
              best_score = s;
              best = std::move(trial);
              improved = true;
            }
          }
    if (!improved) step *= 0.5;
  }
  return M2SearchResult{detail::candidate_from_slots(best), ViolationScore{best_score}};
}

//----------------------------------------------------------------------------
// Compression chain: for every rank-one tripotent P in a family spanning
// all matrix units (the diagonal units E_pp and the hooks E_pp + E_pq),
// both ends of the chain
//   Phi(P) Phi(A+B) Phi(P)  vs  Phi(P) (Phi(A)+Phi(B)) Phi(P)
// must agree. Only meaningful for triple morphisms, so the precondition is
// enforced, not reported.
//----------------------------------------------------------------------------

namespace detail {

template <class S>
std::vector<Matrix<S>> spanning_tripotents(std::size_t n) {
  std::vector<Matrix<S>> out;
  for (std::size_t p = 0; p < n; ++p) {
    out.push_back(Matrix<S>::unit(n, p, p));
    for (std::size_t q = 0; q < n; ++q)
      if (q != p) out.push_back(Matrix<S>::unit(n, p, p) + Matrix<S>::unit(n, p, q));
  }
  return out;
}

template <class S>
bool additivity_chain_core(const SuperMap<S>& phi, const Matrix<S>& a, const Matrix<S>& b,
                           const TolerancePolicy& tol) {
  Matrix<S> fab = phi.apply(a + b);
  Matrix<S> fsum = phi.apply(a) + phi.apply(b);
  for (const Matrix<S>& p : spanning_tripotents<S>(phi.n())) {
    Matrix<S> fp = phi.apply(p);
    if (!matrix_close(fp * fab * fp, fp * fsum * fp, tol)) return false;
  }
  return true;
}

}  // namespace detail

template <class S>
bool additivity_chain_check(const SuperMap<S>& phi, const Matrix<S>& a, const Matrix<S>& b,
                            const TolerancePolicy& tol = {}) {
  if (!is_triple_morphism(phi, tol)) throw NotTripleMorphism("additivity_chain_check");
  return detail::additivity_chain_core(phi, a, b, tol);
}

// Same check over many pairs with the precondition verified once.
template <class S>
bool additivity_chain_check_many(const SuperMap<S>& phi,
                                 const std::vector<std::pair<Matrix<S>, Matrix<S>>>& pairs,
                                 const TolerancePolicy& tol = {}) {
  if (!is_triple_morphism(phi, tol)) throw NotTripleMorphism("additivity_chain_check");
  for (const auto& [a, b] : pairs)
    if (!detail::additivity_chain_core(phi, a, b, tol)) return false;
  return true;
}

//----------------------------------------------------------------------------
// Dimension 1: z -> z|z| is a multiplicative bijection of C that is not
// additive. Float backend only, |z| being irrational in general.
//----------------------------------------------------------------------------

inline ComplexF dim1_counterexample_eval(ComplexF z) { return z * std::abs(z); }

struct Dim1Report {
  std::size_t samples;
  double max_mult_residual;    // relative
  bool multiplicative_ok;      // residual within rel_eps on every sample
  double additivity_violation; // |phi(1+1) - (phi(1)+phi(1))|, exactly 2
};

inline Dim1Report dim1_laws(std::size_t samples, std::uint64_t seed, double rel_eps = 1e-12) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < samples; ++t) {
    ComplexF z{rng.next_symmetric(), rng.next_symmetric()};
    ComplexF w{rng.next_symmetric(), rng.next_symmetric()};
    ComplexF lhs = dim1_counterexample_eval(z * w);
    ComplexF rhs = dim1_counterexample_eval(z) * dim1_counterexample_eval(w);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  ComplexF one{1.0, 0.0};
  double viol = std::abs(dim1_counterexample_eval(one + one) -
                         (dim1_counterexample_eval(one) + dim1_counterexample_eval(one)));
  return Dim1Report{samples, worst, worst <= rel_eps, viol};
}

//----------------------------------------------------------------------------
// Jordan law vs triple law
//----------------------------------------------------------------------------

// Polarized Jordan law Phi(UV+VU) = Phi(U)Phi(V)+Phi(V)Phi(U) over the real
// basis; by real-linearity this decides the law everywhere.
template <class S>
bool is_jordan_morphism(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
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

  for (std::size_t u = 0; u < b; ++u)
    for (std::size_t v = u; v < b; ++v) {
      Matrix<S> lhs = phi.apply(basis[u] * basis[v] + basis[v] * basis[u]);
      Matrix<S> rhs = img[u] * img[v] + img[v] * img[u];
      if (!matrix_close(lhs, rhs, tol)) return false;
    }
  return true;
}

// Truth of "Jordan law on the basis implies triple law" for this map.
template <class S>
bool jordan_implies_triple_check(const SuperMap<S>& phi, const TolerancePolicy& tol = {}) {
  if (!is_jordan_morphism(phi, tol)) return true;
  return is_triple_morphism(phi, tol);
}

}  // namespace triplekit
