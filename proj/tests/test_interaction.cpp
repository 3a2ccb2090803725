#include "ucoh/interaction.hpp"

#include <doctest.h>

using namespace ucoh;

TEST_CASE("conserved-quantity dimensions of the catalog") {
  const std::vector<std::pair<std::string, int>> expected{
      {"exclusion", 1},       {"multispecies:2", 2},         {"multispecies:3", 3}, {"generalized-exclusion:3", 1},
      {"lattice-gas:3", 2},   {"spin3", 1},                  {"glauber", 0},        {"pair-creation", 0}};
  for (const auto& [name, dim] : expected) {
    CAPTURE(name);
    const auto phi = catalog_interaction(name);
    const auto basis = solve_conserved_quantities(phi);
    CHECK(basis.dim() == dim);
    CHECK(is_conserved_basis(phi, basis.rows));
  }
}

TEST_CASE("exclusion basis is the occupation number") {
  const auto basis = solve_conserved_quantities(catalog_interaction("exclusion"));
  REQUIRE(basis.dim() == 1);
  CHECK(basis.value(0, 0) == 0);
  CHECK(basis.value(0, 1) == 1);
}

TEST_CASE("literature bases are conserved") {
  for (const auto& name : {"lattice-gas:3", "multispecies:2", "spin3"}) {
    CAPTURE(name);
    const auto cat = catalog_basis(name);
    REQUIRE(cat);
    CHECK(is_conserved_basis(catalog_interaction(name), *cat));
  }
}

TEST_CASE("simplicity and exchangeability") {
  const auto excl = catalog_interaction("exclusion");
  CHECK(is_simple(excl, solve_conserved_quantities(excl)));
  CHECK(is_exchangeable(excl).exchangeable);
  const auto multi = catalog_interaction("multispecies:2");
  CHECK_FALSE(is_simple(multi, solve_conserved_quantities(multi)));
  CHECK(is_exchangeable(multi).exchangeable);
  for (const auto& name : {"spin3", "lattice-gas:3", "generalized-exclusion:3"}) {
    CAPTURE(name);
    const auto phi = catalog_interaction(name);
    const auto report = is_exchangeable(phi);
    REQUIRE(report.exchangeable);
    for (int a = 0; a < phi.num_states(); ++a)
      for (int b = 0; b < phi.num_states(); ++b)
        CHECK(apply_witness(phi, report.at(a, b, phi.num_states()), a, b) == StatePair{b, a});
  }
}

TEST_CASE("custom tables must be total and consistent") {
  StateSpace s({0, 1}, 0);
  CHECK_THROWS_AS(Interaction(s, {{0, 1, 1, 0}, {0, 1, 0, 0}}), Error);
  CHECK_THROWS_AS(Interaction(s, {{0, 2, 1, 0}}), Error);
  CHECK_THROWS_AS(StateSpace({0, 1}, 5), Error);
}

TEST_CASE("validity of catalog interactions") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    CHECK(validate_interaction(catalog_interaction(name)).relaxed);
  }
}
