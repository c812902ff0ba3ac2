#include <catch2/catch_amalgamated.hpp>

#include "triplekit/canonicalize.hpp"
#include "triplekit/triple_check.hpp"

using namespace triplekit;
using G = GaussianRational;
using TG = ScalarTraits<G>;
using TC = ScalarTraits<ComplexF>;

namespace {

template <class S>
Matrix<S> diag2(const S& a, const S& b) {
  Matrix<S> d = Matrix<S>::zero(2, 2);
  d(0, 0) = a;
  d(1, 1) = b;
  return d;
}

template <class S>
S half_of(const S& z) {
  return z / ScalarTraits<S>::from_int(2);
}

}  // namespace

TEST_CASE("classify recovers the identity map exactly") {
  auto rep = classify(SuperMap<G>::identity(3));
  REQUIRE(rep.spec.c == 1);
  REQUIRE(rep.spec.variant == Variant::Straight);
  REQUIRE(rep.spec.scalar_auto == ScalarAuto::Id);
  REQUIRE(rep.spec.T == Matrix<G>::identity(3));
  REQUIRE(rep.residual == 0.0);
  REQUIRE(rep.steps.size() == 5);
  REQUIRE(rep.steps[0] == "sign: +1");
  REQUIRE(rep.steps[1] == "scalar_auto: id");
  REQUIRE(rep.steps[2] == "variant: straight");
}

TEST_CASE("exact round trips over every flag combination") {
  std::uint64_t seed = 400;
  for (std::size_t n : {2, 3})
    for (int c : {1, -1})
      for (Variant v : {Variant::Straight, Variant::Transpose})
        for (ScalarAuto s : {ScalarAuto::Id, ScalarAuto::Conj}) {
          CanonicalSpec<G> spec{c, v, s, random_invertible<G>(n, seed++)};
          auto rep = classify(from_canonical(spec));
          REQUIRE(rep.residual == 0.0);
          REQUIRE(specs_equivalent(rep.spec, spec));
        }
}

TEST_CASE("n=1 round trip degenerates cleanly") {
  CanonicalSpec<G> spec{-1, Variant::Straight, ScalarAuto::Conj, random_invertible<G>(1, 17)};
  auto rep = classify(from_canonical(spec));
  REQUIRE(rep.residual == 0.0);
  REQUIRE(rep.spec.c == -1);
  REQUIRE(rep.spec.scalar_auto == ScalarAuto::Conj);
  REQUIRE(rep.spec.T == Matrix<G>::identity(1));
}

TEST_CASE("float round trips stay inside the tolerance budget") {
  TolerancePolicy tol;
  std::uint64_t seed = 500;
  for (int c : {1, -1})
    for (Variant v : {Variant::Straight, Variant::Transpose})
      for (ScalarAuto s : {ScalarAuto::Id, ScalarAuto::Conj}) {
        CanonicalSpec<ComplexF> spec{c, v, s, random_invertible<ComplexF>(3, seed++)};
        auto rep = classify(from_canonical(spec), tol);
        REQUIRE(rep.residual <= tol.rel_eps);
        REQUIRE(specs_equivalent(rep.spec, spec, tol));
      }
}

TEST_CASE("normalization pins a deterministic similarity") {
  auto d12 = diag2(TG::one(), TG::from_int(2));
  CanonicalSpec<G> spec{1, Variant::Straight, ScalarAuto::Id, d12};
  auto rep = classify(from_canonical(spec));
  // leading entry is already 1, so the representative is reproduced verbatim
  REQUIRE(rep.spec.T == d12);

  // scaling T by any nonzero scalar leaves the map, hence the answer, fixed
  CanonicalSpec<G> scaled{1, Variant::Straight, ScalarAuto::Id, TG::from_int(5) * d12};
  auto rep2 = classify(from_canonical(scaled));
  REQUIRE(rep2.spec.T == d12);
}

TEST_CASE("negating the map flips only the sign flag") {
  CanonicalSpec<G> spec{1, Variant::Transpose, ScalarAuto::Conj, random_invertible<G>(2, 31)};
  auto phi = from_canonical(spec);
  auto rep = classify(phi);
  auto neg = classify(-TG::one() * phi);
  REQUIRE(neg.spec.c == -rep.spec.c);
  REQUIRE(neg.spec.variant == rep.spec.variant);
  REQUIRE(neg.spec.scalar_auto == rep.spec.scalar_auto);
  REQUIRE(neg.spec.T == rep.spec.T);
  REQUIRE(neg.residual == 0.0);
}

TEST_CASE("classification failures name the broken step") {
  // image of I is 2I
  REQUIRE_THROWS_AS(classify(SuperMap<G>::scalar_multiple(2, TG::from_int(2))), NotUnitalSign);

  // unital, but iI is stretched: A -> (3A - conj(A))/2
  auto stretch_i = SuperMap<G>::from_function(2, [](const Matrix<G>& a) {
    return half_of(TG::from_int(3)) * a - half_of(TG::one()) * conj(a);
  });
  REQUIRE_THROWS_AS(classify(stretch_i), UnsupportedScalarAuto);

  // symmetrizer is unital and complex-linear but neither multiplicative nor
  // anti-multiplicative on units
  auto symmetrize = SuperMap<G>::from_function(2, [](const Matrix<G>& a) {
    Matrix<G> s(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) s(i, j) = half_of(a(i, j) + a(j, i));
    return s;
  });
  REQUIRE_THROWS_AS(classify(symmetrize), DichotomyViolation);
}

TEST_CASE("spec equivalence is projective") {
  auto t = random_invertible<G>(2, 41);
  CanonicalSpec<G> a{1, Variant::Straight, ScalarAuto::Id, t};

  CanonicalSpec<G> b = a;
  b.T = TG::imag_unit() * t;  // complex rescale is still the same map
  REQUIRE(specs_equivalent(a, b));
  REQUIRE(specs_equivalent(b, a));

  CanonicalSpec<G> c = a;
  c.c = -1;
  REQUIRE_FALSE(specs_equivalent(a, c));
  CanonicalSpec<G> d = a;
  d.variant = Variant::Transpose;
  REQUIRE_FALSE(specs_equivalent(a, d));
  CanonicalSpec<G> e = a;
  e.scalar_auto = ScalarAuto::Conj;
  REQUIRE_FALSE(specs_equivalent(a, e));

  CanonicalSpec<G> f = a;
  f.T = t + Matrix<G>::unit(2, 0, 1);  // generically not proportional
  REQUIRE_FALSE(specs_equivalent(a, f));
}

TEST_CASE("extract_h reads off the scalar action") {
  const G lam(2, 1);

  auto straight = from_canonical(CanonicalSpec<G>{1, Variant::Straight, ScalarAuto::Id,
                                                  random_invertible<G>(3, 51)});
  REQUIRE(extract_h(straight, lam) == lam);

  auto conjed = from_canonical(CanonicalSpec<G>{-1, Variant::Transpose, ScalarAuto::Conj,
                                                random_invertible<G>(3, 52)});
  REQUIRE(extract_h(conjed, lam) == G(2, -1));
  REQUIRE(extract_h(conjed, TG::imag_unit()) == -TG::imag_unit());

  TolerancePolicy tol;
  auto fl = from_canonical(CanonicalSpec<ComplexF>{1, Variant::Straight, ScalarAuto::Conj,
                                                   random_invertible<ComplexF>(2, 53)});
  ComplexF h = extract_h(fl, ComplexF(0.5, 0.25), tol);
  REQUIRE(std::abs(h - ComplexF(0.5, -0.25)) <= 1e-9);
}

TEST_CASE("probe disagreement is detected") {
  // A -> A + Re(A_00) E_00 scales the two diagonal probes differently once
  // lambda leaves the real axis
  auto skew = SuperMap<G>::from_function(2, [](const Matrix<G>& a) {
    Matrix<G> out = a;
    G re00(a(0, 0).re, mpq_class(0));
    out(0, 0) += re00;
    return out;
  });
  REQUIRE_THROWS_AS(extract_h(skew, TG::imag_unit()), InconsistentH);
}

TEST_CASE("classified canonical maps satisfy the triple identity") {
  std::uint64_t seed = 600;
  for (int k = 0; k < 6; ++k) {
    auto spec = random_canonical<G>(2, seed++);
    auto phi = from_canonical(spec);
    REQUIRE(is_triple_morphism(phi));
    auto rep = classify(phi);
    REQUIRE(is_triple_morphism(from_canonical(rep.spec)));
  }
}
