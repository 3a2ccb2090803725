#include "ucoh/json_io.hpp"

#include <doctest.h>

using namespace ucoh;
using ucoh::io::Json;

TEST_CASE("rationals round trip") {
  for (const auto& q : {Rational(0), Rational(-7, 3), Rational(12)}) CHECK(io::rational_from(io::to_json(q)) == q);
  CHECK(io::rational_from(Json(5)) == 5);
  CHECK_THROWS_AS(io::rational_from(Json("x/y")), Error);
}

TEST_CASE("matrices and vertices round trip") {
  MatrixQ m(2, 2);
  m << Rational(1), Rational(1, 2), Rational(-3), Rational(0);
  CHECK(io::matrix_from(io::to_json(m)) == m);
  CHECK(io::vertex_from(io::to_json(Vertex{3, -1})) == Vertex{3, -1});
}

TEST_CASE("local functions round trip") {
  const auto f = LocalFunction::tabulate({{0}, {2}}, 3, 0, [](std::span<const int> s) { return Rational(s[0] - s[1], 2); });
  CHECK(io::local_function_from(io::to_json(f), 3, 0).equals(f));
}

TEST_CASE("forms round trip") {
  const auto locale = make_euclidean(1);
  const auto w = std::make_shared<const Window>(box(locale, {-2}, {2}));
  const auto phi = catalog_interaction("exclusion");
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> s) { return Rational(s[0] * s[1]); });
  const auto form = differential(f, w, phi);
  const auto back = io::form_from(io::to_json(form), w, 2, 0);
  REQUIRE(back.num_edges() == form.num_edges());
  for (int e = 0; e < static_cast<int>(form.num_edges()); ++e)
    CHECK((back.at(e) - form.at(e)).essential_support().empty());
}

TEST_CASE("pairing tables round trip") {
  PairingTable t;
  t.cells[{{Rational(1)}, {Rational(2)}}] = PairingCell{Rational(3, 4), 2};
  t.probes.push_back(ProbePair{{{0}}, {{5}}, "left-right"});
  const auto back = io::pairing_table_from(io::to_json(t));
  REQUIRE(back.cells.size() == 1);
  CHECK(*back.find({Rational(1)}, {Rational(2)}) == Rational(3, 4));
  REQUIRE(back.probes.size() == 1);
  CHECK(back.probes[0].orientation == "left-right");
}

TEST_CASE("interactions from tables and names") {
  CHECK(io::interaction_from(Json("exclusion")).states().size() == 2);
  const auto j = Json::parse(R"({"states":[0,1],"base":0,"table":[[1,0,0,1],[0,1,1,0]]})");
  const auto phi = io::interaction_from(j);
  CHECK(is_exchangeable(phi).exchangeable);
  CHECK_THROWS_AS(io::interaction_from(Json("no-such-model")), Error);
}

TEST_CASE("windows from every shape") {
  const auto locale = make_euclidean(2);
  CHECK(io::window_from(Json::parse(R"({"shape":"box","lo":[0,0],"hi":[1,1]})"), locale).vertices().size() == 4);
  CHECK(io::window_from(Json::parse(R"({"shape":"ball","center":[0,0],"radius":1})"), locale).vertices().size() == 5);
  CHECK(io::window_from(Json::parse(R"({"shape":"vertices","vertices":[[0,0],[5,5]]})"), locale).vertices().size() == 2);
  CHECK_THROWS(io::window_from(Json::parse(R"({"shape":"torus"})"), locale));
}
