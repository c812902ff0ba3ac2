#include <catch2/catch_amalgamated.hpp>

#include "triplekit/json_io.hpp"
#include "triplekit/triple_check.hpp"

using namespace triplekit;
using G = GaussianRational;
using TG = ScalarTraits<G>;

TEST_CASE("exact matrices survive a round trip verbatim") {
  Matrix<G> a(2, 2);
  a(0, 0) = G(mpq_class(-3, 7), mpq_class(1, 2));
  a(0, 1) = TG::from_int(5);
  a(1, 0) = -TG::imag_unit();
  a(1, 1) = TG::zero();

  Json j = matrix_to_json(a);
  REQUIRE(j["backend"] == "exact");
  REQUIRE(j["rows"] == 2);
  REQUIRE(j["entries"][0][0] == "-3/7");
  REQUIRE(j["entries"][0][1] == "1/2");
  REQUIRE(j["entries"][1][0] == "5");  // integer form, no "/1"

  REQUIRE(matrix_from_json<G>(j) == a);
}

TEST_CASE("exact parser accepts integer literals and reduces fractions") {
  Json j = {{"backend", "exact"},
            {"rows", 1},
            {"cols", 2},
            {"entries", Json::array({Json::array({"4/8", "0"}), Json::array({"-2", "6/3"})})}};
  auto m = matrix_from_json<G>(j);
  REQUIRE(m(0, 0) == G(mpq_class(1, 2), mpq_class(0)));
  REQUIRE(m(0, 1) == G(-2, 2));
}

TEST_CASE("float matrices round trip bit for bit") {
  Matrix<ComplexF> a(2, 3);
  SplitMix64 rng(77);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      a(i, j) = ComplexF{rng.next_symmetric(), rng.next_symmetric()};
  a(0, 0) = ComplexF{0.1, -0.3};  // not exactly representable, must still survive

  Json j = matrix_to_json(a);
  REQUIRE(j["backend"] == "float");
  auto back = matrix_from_json<ComplexF>(j);
  REQUIRE(back == a);
}

TEST_CASE("matrix parse failures are precise") {
  Json good = matrix_to_json(Matrix<G>::identity(2));

  Json bad = good;
  bad["backend"] = "decimal";
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  // well-formed but wrong backend for the requested type
  REQUIRE_THROWS_AS(matrix_from_json<ComplexF>(good), BackendMismatch);
  REQUIRE_THROWS_AS(matrix_from_json<G>(matrix_to_json(Matrix<ComplexF>::identity(2))),
                    BackendMismatch);

  bad = good;
  bad["entries"].erase(3);
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  bad = good;
  bad["entries"][0][0] = "1/0";
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  bad = good;
  bad["entries"][0][0] = "abc";
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  bad = good;
  bad["entries"][0][0] = 3;  // exact entries must be strings
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  bad = good;
  bad["rows"] = 0;
  REQUIRE_THROWS_AS(matrix_from_json<G>(bad), ParseError);

  Json fbad = matrix_to_json(Matrix<ComplexF>::identity(2));
  fbad["entries"][0][0] = "1.0";  // float entries must be numbers
  REQUIRE_THROWS_AS(matrix_from_json<ComplexF>(fbad), ParseError);

  REQUIRE_THROWS_AS(matrix_from_json<G>(Json::array()), ParseError);
}

TEST_CASE("parse_any_matrix dispatches on the tag") {
  auto e = parse_any_matrix(matrix_to_json(Matrix<G>::identity(2)));
  REQUIRE(std::holds_alternative<Matrix<G>>(e));
  auto f = parse_any_matrix(matrix_to_json(Matrix<ComplexF>::identity(2)));
  REQUIRE(std::holds_alternative<Matrix<ComplexF>>(f));
}

TEST_CASE("supermaps round trip and reject mixed backends") {
  auto phi = from_canonical(random_canonical<G>(2, 91));
  Json j = supermap_to_json(phi);
  REQUIRE(supermap_from_json<G>(j) == phi);
  REQUIRE(std::holds_alternative<SuperMap<G>>(parse_any_supermap(j)));

  Json mixed = j;
  mixed["K"] = matrix_to_json(Matrix<ComplexF>::zero(4, 4));
  REQUIRE_THROWS_AS(parse_any_supermap(mixed), BackendMismatch);

  Json shape = j;
  shape["n"] = 3;  // blocks are 4x4, not 9x9
  REQUIRE_THROWS_AS(supermap_from_json<G>(shape), ParseError);

  Json nol = j;
  nol.erase("L");
  REQUIRE_THROWS_AS(supermap_from_json<G>(nol), ParseError);

  auto fphi = from_canonical(random_canonical<ComplexF>(3, 92));
  REQUIRE(supermap_from_json<ComplexF>(supermap_to_json(fphi)) == fphi);
}

TEST_CASE("specs round trip across every flag combination") {
  std::uint64_t seed = 800;
  for (int c : {1, -1})
    for (Variant v : {Variant::Straight, Variant::Transpose})
      for (ScalarAuto s : {ScalarAuto::Id, ScalarAuto::Conj}) {
        CanonicalSpec<G> spec{c, v, s, random_invertible<G>(2, seed++)};
        Json j = spec_to_json(spec);
        auto back = spec_from_json<G>(j);
        REQUIRE(back.c == spec.c);
        REQUIRE(back.variant == spec.variant);
        REQUIRE(back.scalar_auto == spec.scalar_auto);
        REQUIRE(back.T == spec.T);
      }

  Json j = spec_to_json(CanonicalSpec<ComplexF>{-1, Variant::Transpose, ScalarAuto::Conj,
                                                random_invertible<ComplexF>(2, 93)});
  REQUIRE(j["variant"] == "transpose");
  REQUIRE(j["scalar_auto"] == "conj");
  REQUIRE(std::holds_alternative<CanonicalSpec<ComplexF>>(parse_any_spec(j)));
}

TEST_CASE("spec parse failures") {
  Json good = spec_to_json(
      CanonicalSpec<G>{1, Variant::Straight, ScalarAuto::Id, Matrix<G>::identity(2)});

  Json bad = good;
  bad["c"] = 2;
  REQUIRE_THROWS_AS(spec_from_json<G>(bad), ParseError);

  bad = good;
  bad["variant"] = "adjoint";
  REQUIRE_THROWS_AS(spec_from_json<G>(bad), ParseError);

  bad = good;
  bad["scalar_auto"] = Json::array();
  REQUIRE_THROWS_AS(spec_from_json<G>(bad), ParseError);

  bad = good;
  bad["T"] = matrix_to_json(Matrix<G>(2, 3));
  REQUIRE_THROWS_AS(spec_from_json<G>(bad), ParseError);

  bad = good;
  bad.erase("T");
  REQUIRE_THROWS_AS(spec_from_json<G>(bad), ParseError);
}

TEST_CASE("classification reports round trip") {
  auto rep = classify(from_canonical(random_canonical<G>(2, 95)));
  Json j = report_to_json(rep);
  REQUIRE(j["residual"] == 0.0);
  REQUIRE(j["steps"].is_array());

  auto back = report_from_json<G>(j);
  REQUIRE(back.residual == rep.residual);
  REQUIRE(back.steps == rep.steps);
  REQUIRE(specs_equivalent(back.spec, rep.spec));

  Json bad = j;
  bad["residual"] = "tiny";
  REQUIRE_THROWS_AS(report_from_json<G>(bad), ParseError);
}

TEST_CASE("serialized text parses back to the same map") {
  auto phi = from_canonical(random_canonical<G>(3, 96));
  std::string text = supermap_to_json(phi).dump();
  auto back = supermap_from_json<G>(Json::parse(text));
  REQUIRE(back == phi);
  REQUIRE(is_triple_morphism(back));
}
