#include "ucoh/cohomology.hpp"

#include <doctest.h>

using namespace ucoh;

namespace {

Quantity q1(long a) { return {Rational(a)}; }

PairingTable product_table(int max, bool triangle = false) {
  PairingTable t;
  for (long a = 0; a <= max; ++a)
    for (long b = 0; b <= max; ++b)
      if (!triangle || a + b <= max) t.cells[{q1(a), q1(b)}] = PairingCell{Rational(a * b), 1};
  return t;
}

}  // namespace

TEST_CASE("a local function with exact support far from both regions has zero pairing") {
  const auto locale = make_euclidean(1);
  const Window w = box(locale, {-6}, {6});
  const auto phi = catalog_interaction("exclusion");
  const auto basis = solve_conserved_quantities(phi);
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> s) { return Rational(s[0] * s[1]); });
  const ConfigFunction fn = [&](const Configuration& eta) { return f(eta); };
  const auto table = compute_pairing(fn, w, phi, basis, 1, default_probe_plan(w, 1, 1));
  CHECK_FALSE(table.cells.empty());
  for (const auto& [key, cell] : table.cells) CHECK(cell.value == 0);
}

TEST_CASE("ill-defined pairings are rejected") {
  const Window w = box(make_euclidean(1), {-4}, {4});
  const auto phi = catalog_interaction("exclusion");
  const auto basis = solve_conserved_quantities(phi);
  // Depends on where the particles sit, not only on how many there are.
  const ConfigFunction f = [](const Configuration& eta) { return Rational(eta.at({-3}) * eta.at({3})); };
  CHECK_THROWS_AS(compute_pairing(f, w, phi, basis, 1, {ProbePair{{{-3}, {-2}}, {{3}}}}), Error);
}

TEST_CASE("product pairing satisfies the laws and splits") {
  const auto table = product_table(4);
  const auto laws = check_cocycle_and_symmetry(table);
  CHECK(laws.cocycle);
  CHECK(laws.symmetric);
  CHECK(laws.triples_checked > 0);
  const auto split = solve_splitting(table);
  REQUIRE(split.feasible);
  for (const auto& [key, cell] : table.cells)
    CHECK(split.h.at(key.first) + split.h.at(key.second) - split.h.at({key.first[0] + key.second[0]}) == cell.value);
  // Every splitting is h(n) = -n(n-1)/2 + n h(1).
  const Rational h1 = split.h.at(q1(1));
  for (long n = 0; n <= 8; ++n) CHECK(split.h.at(q1(n)) == Rational(-n * (n - 1), 2) + h1 * n);
}

TEST_CASE("rank-1 iteration pins h at the generator") {
  const auto split = solve_splitting(product_table(5, true));
  REQUIRE(split.feasible);
  CHECK(split.method == "rank-1 iteration");
  for (long n = 0; n <= 5; ++n) CHECK(split.h.at(q1(n)) == Rational(-n * (n - 1), 2));
}

TEST_CASE("zero pairing splits to zero") {
  PairingTable t;
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) t.cells[{q1(a), q1(b)}] = PairingCell{Rational(0), 1};
  const auto split = solve_splitting(t);
  REQUIRE(split.feasible);
  for (const auto& [q, v] : split.h) CHECK(v == 0);
}

TEST_CASE("asymmetric pairing has no splitting") {
  PairingTable t;
  const std::vector<Quantity> qs{{0, 0}, {1, 0}, {0, 1}};
  for (const auto& a : qs)
    for (const auto& b : qs) t.cells[{a, b}] = PairingCell{a[0] * b[1], 1};
  const auto laws = check_cocycle_and_symmetry(t);
  CHECK(laws.cocycle);
  CHECK_FALSE(laws.symmetric);
  const auto split = solve_splitting(t);
  CHECK_FALSE(split.feasible);
  CHECK_FALSE(split.certificate.empty());
  CHECK(split.certificate_value != 0);
}

TEST_CASE("cocycle violations are reported") {
  auto t = product_table(3);
  t.cells[{q1(1), q1(1)}].value = 5;
  CHECK_FALSE(check_cocycle_and_symmetry(t).cocycle);
  CHECK_THROWS_AS(solve_splitting(t), Error);
}

TEST_CASE("uniformizing a uniform function changes it by a constant") {
  const Window w = box(make_euclidean(1), {-6}, {6});
  const auto phi = catalog_interaction("exclusion");
  const auto basis = solve_conserved_quantities(phi);
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> s) { return Rational(3 * s[0] - s[1]); });
  const ConfigFunction fn = [&](const Configuration& eta) { return f(eta); };
  const auto u = uniformize(fn, w, phi, basis, 1, default_probe_plan(w, 1, 1));
  CHECK(u.criterion.holds);
  CHECK(u.certificate.passes);
  Configuration eta(0);
  eta.set({0}, 1);
  eta.set({4}, 1);
  CHECK(u.g(eta) - fn(eta) == u.g(Configuration(0)) - fn(Configuration(0)) + 0);
}

TEST_CASE("components versus conserved totals") {
  const auto seg = [](int n) { return std::make_shared<const Window>(box(make_euclidean(1), {0}, {n - 1})); };
  {
    const auto phi = catalog_interaction("exclusion");
    const auto rep = h0_report(seg(3), phi, solve_conserved_quantities(phi));
    CHECK(rep.num_components == 4);
    CHECK(rep.values.size() == 4);
    CHECK(rep.constant_on_components);
    CHECK(rep.separates);
  }
  {
    const auto phi = catalog_interaction("glauber");
    const auto rep = h0_report(seg(3), phi, solve_conserved_quantities(phi));
    CHECK(rep.num_components == 1);
    CHECK(rep.separates);
  }
  {
    const auto phi = catalog_interaction("pair-creation");
    const auto rep = h0_report(seg(2), phi, solve_conserved_quantities(phi));
    CHECK(rep.num_components >= 2);
    CHECK(rep.values.size() == 1);
    CHECK_FALSE(rep.separates);
  }
}
