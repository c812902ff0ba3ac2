#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "triplekit/canonicalize.hpp"
#include "triplekit/errors.hpp"
#include "triplekit/matrix.hpp"
#include "triplekit/scalar.hpp"
#include "triplekit/supermap.hpp"

namespace triplekit {

//============================================================================
// JSON interchange. Matrices carry a backend tag; exact entries travel as
// canonical rational strings ("p/q", or "p" when the denominator is 1),
// float entries as JSON numbers. Parsers are strict: a tag mismatch raises
// BackendMismatch, malformed content raises ParseError.
//
//   matrix   {"backend":"exact"|"float","rows":r,"cols":c,"entries":[[re,im],...]}
//   supermap {"n":n,"L":<matrix>,"K":<matrix>}
//   spec     {"c":1|-1,"variant":"straight"|"transpose",
//             "scalar_auto":"id"|"conj","T":<matrix>}
//   report   {"spec":<spec>,"residual":x,"steps":[...]}
//============================================================================

using Json = nlohmann::json;

using AnyMatrix = std::variant<Matrix<GaussianRational>, Matrix<ComplexF>>;
using AnySuperMap = std::variant<SuperMap<GaussianRational>, SuperMap<ComplexF>>;
using AnyCanonicalSpec = std::variant<CanonicalSpec<GaussianRational>, CanonicalSpec<ComplexF>>;

namespace detail {

inline Json rational_to_json(const mpq_class& q) { return q.get_str(); }

inline mpq_class rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("exact entry must be a rational string");
  mpq_class q;
  try {
    q = mpq_class(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + j.dump());
  }
  if (q.get_den() == 0) throw ParseError("zero denominator: " + j.dump());
  q.canonicalize();
  return q;
}

inline Json scalar_to_json(const GaussianRational& s) {
  return Json::array({rational_to_json(s.re), rational_to_json(s.im)});
}

inline Json scalar_to_json(const ComplexF& s) { return Json::array({s.real(), s.imag()}); }

template <class S>
S scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("entry must be a [re, im] pair");
  if constexpr (ScalarTraits<S>::is_exact) {
    return GaussianRational{rational_from_json(j[0]), rational_from_json(j[1])};
  } else {
    if (!j[0].is_number() || !j[1].is_number()) throw ParseError("float entry must be numeric");
    return ComplexF{j[0].get<double>(), j[1].get<double>()};
  }
}

inline std::string require_string(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string(key) + " missing");
  return j[key].get<std::string>();
}

inline std::size_t require_count(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ParseError(std::string(key) + " must be a nonnegative integer");
  return j[key].get<std::size_t>();
}

}  // namespace detail

template <class S>
Json matrix_to_json(const Matrix<S>& a) {
  Json entries = Json::array();
  for (const S& s : a.data()) entries.push_back(detail::scalar_to_json(s));
  return Json{{"backend", ScalarTraits<S>::backend_name()},
              {"rows", a.rows()},
              {"cols", a.cols()},
              {"entries", std::move(entries)}};
}

template <class S>
Matrix<S> matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix must be an object");
  const std::string backend = detail::require_string(j, "backend");
  if (backend != "exact" && backend != "float") throw ParseError("unknown backend " + backend);
  if (backend != ScalarTraits<S>::backend_name())
    throw BackendMismatch("matrix tagged " + backend);
  const std::size_t rows = detail::require_count(j, "rows");
  const std::size_t cols = detail::require_count(j, "cols");
  if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows * cols)
    throw ParseError("entries must hold rows*cols pairs");
  Matrix<S> m(rows, cols);
  for (std::size_t e = 0; e < rows * cols; ++e)
    m.data()[e] = detail::scalar_from_json<S>(j["entries"][e]);
  return m;
}

inline AnyMatrix parse_any_matrix(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix must be an object");
  if (detail::require_string(j, "backend") == "exact")
    return matrix_from_json<GaussianRational>(j);
  return matrix_from_json<ComplexF>(j);
}

template <class S>
Json supermap_to_json(const SuperMap<S>& phi) {
  return Json{{"n", phi.n()},
              {"L", matrix_to_json(phi.L())},
              {"K", matrix_to_json(phi.K())}};
}

template <class S>
SuperMap<S> supermap_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("supermap must be an object");
  const std::size_t n = detail::require_count(j, "n");
  if (!j.contains("L") || !j.contains("K")) throw ParseError("supermap needs L and K");
  Matrix<S> l = matrix_from_json<S>(j["L"]);
  Matrix<S> k = matrix_from_json<S>(j["K"]);
  try {
    return SuperMap<S>(n, std::move(l), std::move(k));
  } catch (const ShapeMismatch& e) {
    throw ParseError(e.what());
  }
}

inline AnySuperMap parse_any_supermap(const Json& j) {
  if (!j.is_object() || !j.contains("L")) throw ParseError("supermap must be an object with L");
  if (detail::require_string(j["L"], "backend") == "exact")
    return supermap_from_json<GaussianRational>(j);
  return supermap_from_json<ComplexF>(j);
}

inline std::string variant_name(Variant v) {
  return v == Variant::Straight ? "straight" : "transpose";
}

inline std::string scalar_auto_name(ScalarAuto s) { return s == ScalarAuto::Id ? "id" : "conj"; }

inline Variant parse_variant(const std::string& s) {
  if (s == "straight") return Variant::Straight;
  if (s == "transpose") return Variant::Transpose;
  throw ParseError("unknown variant " + s);
}

inline ScalarAuto parse_scalar_auto(const std::string& s) {
  if (s == "id") return ScalarAuto::Id;
  if (s == "conj") return ScalarAuto::Conj;
  throw ParseError("unknown scalar_auto " + s);
}

template <class S>
Json spec_to_json(const CanonicalSpec<S>& spec) {
  return Json{{"c", spec.c},
              {"variant", variant_name(spec.variant)},
              {"scalar_auto", scalar_auto_name(spec.scalar_auto)},
              {"T", matrix_to_json(spec.T)}};
}

template <class S>
CanonicalSpec<S> spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("spec must be an object");
  if (!j.contains("c") || !j["c"].is_number_integer()) throw ParseError("spec c must be integer");
  const int c = j["c"].get<int>();
  if (c != 1 && c != -1) throw ParseError("spec c must be 1 or -1");
  if (!j.contains("T")) throw ParseError("spec needs T");
  Matrix<S> t = matrix_from_json<S>(j["T"]);
  if (!t.is_square()) throw ParseError("spec T must be square");
  return CanonicalSpec<S>{c, parse_variant(detail::require_string(j, "variant")),
                          parse_scalar_auto(detail::require_string(j, "scalar_auto")),
                          std::move(t)};
}

inline AnyCanonicalSpec parse_any_spec(const Json& j) {
  if (!j.is_object() || !j.contains("T")) throw ParseError("spec must be an object with T");
  if (detail::require_string(j["T"], "backend") == "exact")
    return spec_from_json<GaussianRational>(j);
  return spec_from_json<ComplexF>(j);
}

template <class S>
Json report_to_json(const ClassifyReport<S>& r) {
  return Json{{"spec", spec_to_json(r.spec)}, {"residual", r.residual}, {"steps", r.steps}};
}

template <class S>
ClassifyReport<S> report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("spec")) throw ParseError("report must be an object with spec");
  if (!j.contains("residual") || !j["residual"].is_number())
    throw ParseError("report residual must be numeric");
  std::vector<std::string> steps;
  if (j.contains("steps")) {
    if (!j["steps"].is_array()) throw ParseError("report steps must be an array");
    for (const Json& s : j["steps"]) {
      if (!s.is_string()) throw ParseError("report steps must be strings");
      steps.push_back(s.get<std::string>());
    }
  }
  return ClassifyReport<S>{spec_from_json<S>(j["spec"]), j["residual"].get<double>(),
                           std::move(steps)};
}

}  // namespace triplekit
