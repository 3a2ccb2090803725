#include "ucoh/calculus.hpp"

#include <doctest.h>

#include <random>

using namespace ucoh;

namespace {

LocalFunction random_function(std::mt19937& rng, std::vector<Vertex> support, int n) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return LocalFunction::tabulate(std::move(support), n, 0,
                                 [&](std::span<const int>) { return Rational(num(rng), den(rng)); });
}

WindowPtr segment(int length) {
  return std::make_shared<const Window>(box(make_euclidean(1), {0}, {length - 1}));
}

}  // namespace

TEST_CASE("restriction sets outside coordinates to base") {
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> s) { return Rational(s[0] + 2 * s[1]); });
  const auto g = f.restricted({{1}});
  CHECK(g.support() == std::vector<Vertex>{{1}});
  CHECK(g.table()[1] == 2);
  CHECK(f.extended({{0}, {1}, {2}}).equals(f));
  CHECK(f.essential_support() == f.support());
  const auto h = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> s) { return Rational(s[1]); });
  CHECK(h.essential_support() == std::vector<Vertex>{{1}});
}

TEST_CASE("expansion methods agree and reconstruct") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const int sites = n == 2 ? 5 : 4;
    std::vector<Vertex> support;
    for (int i = 0; i < sites; ++i) support.push_back({i});
    const auto f = random_function(rng, support, n);
    const auto rec = expand(f, ExpansionMethod::recursion);
    const auto mob = expand(f, ExpansionMethod::mobius);
    for (const auto& [mask, term] : rec.terms) {
      CHECK(term.equals(mob.terms.at(mask)));
      CHECK(term.has_exact_support());
    }
    CHECK(rec.reconstruct().equals(f));
  }
}

TEST_CASE("uniformity certificate reports the largest exact support") {
  const auto f = LocalFunction::tabulate({{0}, {3}}, 2, 0, [](std::span<const int> s) { return Rational(s[0] * s[1]); });
  const auto cert = uniformity(f, *make_euclidean(1), 2);
  CHECK(cert.max_diameter == 3);
  CHECK_FALSE(cert.passes);
}

TEST_CASE("differentials are closed and integrate back") {
  std::mt19937 rng(9);
  const auto phi = catalog_interaction("multispecies:2");
  const auto window = segment(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_function(rng, {{1}, {2}}, 3);
    const auto form = differential(f, window, phi);
    CHECK(validate_form(form, phi).ok);
    CHECK(is_closed(form, phi).closed);
    const auto v = integrate(form, phi);
    const auto values = tabulate(*v.space, f);
    std::map<int, Rational> offset;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto [it, fresh] = offset.emplace(v.component[i], values[i] - v.values[i]);
      CHECK(it->second == values[i] - v.values[i]);
    }
  }
}

TEST_CASE("a perturbed edge yields a witness cycle") {
  const auto phi = catalog_interaction("exclusion");
  const auto window = segment(4);
  Form form(window, 2, 0, 1);
  const auto e = *window->edge_index(*window->index_of({1}), *window->index_of({2}));
  form.at(e) = LocalFunction::tabulate({{1}, {2}, {3}}, 2, 0, [](std::span<const int> s) { return Rational(s[2]); });
  const auto rep = is_closed(form, phi);
  REQUIRE_FALSE(rep.closed);
  CHECK(is_valid_path(rep.witness, phi));
  CHECK(rep.witness.front().source == rep.witness.back().target);
  CHECK(rep.witness_integral != 0);
  CHECK(integrate_along(form, rep.witness) == rep.witness_integral);
  CHECK_THROWS_AS(integrate(form, phi), Error);
}

TEST_CASE("conserved totals are horizontal") {
  const auto window = segment(4);
  for (const auto& name : {"exclusion", "multispecies:2", "lattice-gas:2", "spin3", "generalized-exclusion:2"}) {
    CAPTURE(name);
    const auto phi = catalog_interaction(name);
    const auto basis = solve_conserved_quantities(phi);
    for (int i = 0; i < basis.dim(); ++i) {
      const auto total = LocalFunction::tabulate(window->vertices(), phi.num_states(), phi.base(), [&](std::span<const int> s) {
        Rational sum(0);
        for (int st : s) sum += basis.value(i, st);
        return sum;
      });
      const auto form = differential(total, window, phi);
      for (std::size_t e = 0; e < form.num_edges(); ++e) CHECK(form.at(static_cast<int>(e)).is_zero());
    }
  }
}
