#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "triplekit/errors.hpp"
#include "triplekit/rng.hpp"

namespace triplekit {

//============================================================================
// Scalar backends
//
// Exact backend: Gaussian rationals, components kept in lowest terms with
// positive denominator by GMP's canonical form. Certifies algebraic
// identities bit-exactly; tolerances are ignored.
// Float backend: std::complex<double> under an explicit TolerancePolicy.
// The backends never mix: in the typed core mixing does not compile, at the
// JSON/CLI boundary it raises BackendMismatch.
//============================================================================

struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long r, long i) : re(r), im(i) {}
  explicit GaussianRational(long r) : re(r), im(0) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianRational& o) const { return !(*this == o); }
};

inline GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
  return {mpq_class(a.re + b.re), mpq_class(a.im + b.im)};
}
inline GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
  return {mpq_class(a.re - b.re), mpq_class(a.im - b.im)};
}
inline GaussianRational operator-(const GaussianRational& a) {
  return {mpq_class(-a.re), mpq_class(-a.im)};
}
inline GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {mpq_class(a.re * b.re - a.im * b.im), mpq_class(a.re * b.im + a.im * b.re)};
}
inline GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  mpq_class n2 = b.re * b.re + b.im * b.im;
  if (n2 == 0) throw Singular("scalar division by zero");
  return {mpq_class((a.re * b.re + a.im * b.im) / n2), mpq_class((a.im * b.re - a.re * b.im) / n2)};
}
inline GaussianRational& operator+=(GaussianRational& a, const GaussianRational& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}

using ComplexF = std::complex<double>;

// Comparison thresholds for the float backend. The exact backend ignores
// this entirely.
struct TolerancePolicy {
  double rel_eps = 1e-9;
  double rank_eps = 1e-9;

  TolerancePolicy() = default;
  TolerancePolicy(double rel, double rank) : rel_eps(rel), rank_eps(rank) {
    if (!(rel > 0.0) || !(rank > 0.0))
      throw std::invalid_argument("TolerancePolicy thresholds must be strictly positive");
  }
};

//============================================================================
// ScalarTraits: the operations the templated core needs from a backend.
//============================================================================

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool is_exact = true;
  static const char* backend_name() { return "exact"; }

  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational imag_unit() { return {0, 1}; }
  static GaussianRational from_int(long v) { return GaussianRational(v); }

  static GaussianRational conjugate(const GaussianRational& s) {
    return {s.re, mpq_class(-s.im)};
  }
  static bool exactly_zero(const GaussianRational& s) { return s.re == 0 && s.im == 0; }

  // |s|^2 as a double; used only where a size estimate is wanted (pivot
  // choice, residual reporting), never for exact verdicts.
  static double abs2_approx(const GaussianRational& s) {
    mpq_class a = s.re * s.re + s.im * s.im;
    return a.get_d();
  }

  // Small random entry: integer components. Keeps downstream products within
  // the fast integer sweep's bounds.
  static GaussianRational random_entry(SplitMix64& rng) {
    return {rng.next_int(-2, 2), rng.next_int(-2, 2)};
  }
};

template <>
struct ScalarTraits<ComplexF> {
  static constexpr bool is_exact = false;
  static const char* backend_name() { return "float"; }

  static ComplexF zero() { return {0.0, 0.0}; }
  static ComplexF one() { return {1.0, 0.0}; }
  static ComplexF imag_unit() { return {0.0, 1.0}; }
  static ComplexF from_int(long v) { return {static_cast<double>(v), 0.0}; }

  static ComplexF conjugate(const ComplexF& s) { return std::conj(s); }
  static bool exactly_zero(const ComplexF& s) { return s.real() == 0.0 && s.imag() == 0.0; }

  static double abs2_approx(const ComplexF& s) { return std::norm(s); }

  static ComplexF random_entry(SplitMix64& rng) {
    double re = rng.next_symmetric();
    double im = rng.next_symmetric();
    return {re, im};
  }
};

template <class S>
inline double abs_approx(const S& s) {
  return std::sqrt(ScalarTraits<S>::abs2_approx(s));
}

// Scale-aware scalar comparison. `scale` is the magnitude of the surrounding
// computation (e.g. a matrix max-norm); the floor of 1 keeps near-zero
// comparisons absolute.
template <class S>
inline bool scalar_close(const S& a, const S& b, const TolerancePolicy& tol, double scale = 1.0) {
  if constexpr (ScalarTraits<S>::is_exact) {
    (void)tol;
    (void)scale;
    return a == b;
  } else {
    double bound = tol.rel_eps * std::max(1.0, scale);
    return std::abs(a - b) <= bound;
  }
}

}  // namespace triplekit
