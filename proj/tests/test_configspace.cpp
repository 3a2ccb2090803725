#include "ucoh/configspace.hpp"

#include <doctest.h>

using namespace ucoh;

namespace {

WindowPtr segment(int length) {
  return std::make_shared<const Window>(box(make_euclidean(1), {0}, {length - 1}));
}

}  // namespace

TEST_CASE("single-edge transitions") {
  const auto phi = catalog_interaction("exclusion");
  Configuration eta(0);
  eta.set({0}, 1);
  const auto moved_eta = apply_edge(eta, {0}, {1}, phi);
  CHECK(moved_eta.at({0}) == 0);
  CHECK(moved_eta.at({1}) == 1);
  CHECK(apply_edge(eta, {1}, {2}, phi) == eta);
  CHECK(moved_eta.support_size() == 1);
}

TEST_CASE("exclusion on three sites has one component per particle number") {
  const auto graph = build_transition_graph(segment(3), catalog_interaction("exclusion"));
  CHECK(graph.space().size() == 8);
  CHECK(graph.num_components() == 4);
}

TEST_CASE("configuration budget is enforced") {
  GraphOptions opts;
  opts.budget = 100;
  CHECK_THROWS_AS(build_transition_graph(segment(7), catalog_interaction("exclusion"), opts), Error);
}

TEST_CASE("sectors keep bounded supports") {
  GraphOptions opts;
  opts.max_support = 2;
  const auto graph = build_transition_graph(segment(6), catalog_interaction("exclusion"), opts);
  CHECK(graph.space().size() == 1 + 6 + 15);
  CHECK(graph.num_components() == 3);
}

TEST_CASE("exchange and move paths reach their targets") {
  const auto window = std::make_shared<const Window>(box(make_euclidean(2), {0, 0}, {2, 2}));
  for (const auto& name : {"multispecies:2", "spin3", "lattice-gas:2", "generalized-exclusion:2"}) {
    CAPTURE(name);
    const auto phi = catalog_interaction(name);
    Configuration eta(phi.base());
    eta.set({0, 0}, (phi.base() + 1) % phi.num_states());
    eta.set({1, 1}, (phi.base() + 2) % phi.num_states());
    eta.set({2, 2}, (phi.base() + 1) % phi.num_states());
    const auto path = exchange_path(eta, {0, 0}, {2, 2}, phi, *window);
    CHECK(is_valid_path(path, phi));
    const auto target = path.empty() ? eta : path.back().target;
    CHECK(target == exchanged(eta, {0, 0}, {2, 2}));
    const auto mpath = move_path(eta, {0, 0}, {1, 1}, phi, *window);
    CHECK(is_valid_path(mpath, phi));
    CHECK((mpath.empty() ? eta : mpath.back().target) == moved(eta, {0, 0}, {1, 1}, phi));
  }
}

TEST_CASE("breadth-first paths are valid") {
  const auto phi = catalog_interaction("exclusion");
  Configuration a(0), b(0);
  a.set({0}, 1);
  a.set({1}, 1);
  b.set({2}, 1);
  b.set({3}, 1);
  const auto path = find_path(a, b, phi, *segment(4));
  REQUIRE(path);
  CHECK(is_valid_path(*path, phi));
  CHECK(path->front().source == a);
  CHECK(path->back().target == b);
  Configuration c(0);
  c.set({0}, 1);
  CHECK_FALSE(find_path(a, c, phi, *segment(4)));
}

TEST_CASE("irreducible quantification evidence") {
  const auto excl = catalog_interaction("exclusion");
  CHECK(check_irreducible_quantification(excl, solve_conserved_quantities(excl), segment(4)).fibers_connected);
  const auto bad = catalog_interaction("pair-creation");
  const auto rep = check_irreducible_quantification(bad, solve_conserved_quantities(bad), segment(3));
  CHECK_FALSE(rep.fibers_connected);
  REQUIRE(rep.witness);
  CHECK_FALSE(rep.witness->first == rep.witness->second);
}
