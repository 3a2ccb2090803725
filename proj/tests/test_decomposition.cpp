#include "ucoh/decomposition.hpp"

#include <doctest.h>

#include <random>

using namespace ucoh;

namespace {

struct Setup {
  LocalePtr locale;
  WindowPtr window;
  Interaction phi;
  ConsvBasis basis;
  GroupAction action;
  std::vector<Vertex> domain;
};

Setup setup(int d, int half, const std::string& model = "exclusion") {
  auto locale = make_euclidean(d);
  auto window = std::make_shared<const Window>(box(locale, Vertex(d, -half), Vertex(d, half)));
  auto phi = catalog_interaction(model);
  auto basis = solve_conserved_quantities(phi);
  auto action = *locale->default_action();
  return {locale, window, phi, basis, action, {Vertex(d, 0)}};
}

Configuration config(std::initializer_list<std::pair<Vertex, int>> sites) {
  Configuration eta(0);
  for (const auto& [x, s] : sites) eta.set(x, s);
  return eta;
}

}  // namespace

TEST_CASE("acting on functions moves the support") {
  const auto s = setup(1, 4);
  const auto f = LocalFunction::tabulate({{0}}, 2, 0, [](std::span<const int> st) { return Rational(st[0] == 1); });
  CHECK(act_on_function(s.action, s.action.identity(), f).equals(f));
  const auto g = act_on_function(s.action, s.action.generator(0), f);
  CHECK(g.support() == std::vector<Vertex>{{1}});
  CHECK(g(config({{{1}, 1}})) == 1);
  CHECK(g(config({{{0}, 1}})) == 0);
}

TEST_CASE("omega_rho for exclusion is a times the current") {
  const auto s = setup(1, 4);
  MatrixQ a(1, 1);
  a(0, 0) = Rational(3, 2);
  const auto om = build_omega_rho(a, s.action, s.domain, s.window, s.basis, s.phi);
  for (int x = -4; x < 4; ++x) {
    const auto* fn = om.find({x}, {x + 1});
    REQUIRE(fn != nullptr);
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v) CHECK((*fn)(config({{{x}, u}, {{x + 1}, v}})) == Rational(3, 2) * Rational(u - v));
  }
  CHECK(is_shift_invariant(om, s.action, 1).invariant);
}

TEST_CASE("a single differential is not invariant") {
  const auto s = setup(1, 4);
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> st) { return Rational(st[0] * st[1]); });
  const auto rep = is_shift_invariant(differential(f, s.window, s.phi), s.action, 1);
  CHECK_FALSE(rep.invariant);
  CHECK(rep.witness_edge.has_value());
}

TEST_CASE("theta minus its shift is the cocycle value summed over sites") {
  const auto s = setup(1, 5, "multispecies:2");
  MatrixQ a(s.basis.rows.rows(), 1);
  for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, 0) = Rational(static_cast<long>(i) + 2, 3);
  const auto th = theta(a, s.action, s.domain, s.basis, 3);
  const auto rho = cocycle_value(a, s.basis, {1}, 3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> st(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    Configuration eta(0), shifted(0);
    Rational expected(0);
    for (int x = -3; x <= 3; ++x) {
      const int v = st(rng);
      eta.set({x}, v);
      shifted.set({x - 1}, v);  // shifted_x = eta_{x+1}
      expected += rho[static_cast<std::size_t>(v)];
    }
    CHECK(th(eta) - th(shifted) == expected);
  }
}

TEST_CASE("cocycle extraction") {
  const auto s = setup(2, 4);
  MatrixQ a(1, 2);
  a(0, 0) = Rational(-1, 3);
  a(0, 1) = Rational(5);
  const auto om = build_omega_rho(a, s.action, s.domain, s.window, s.basis, s.phi);
  CHECK(extract_cocycle(om, s.phi, s.basis, s.action).a == a);

  const auto f = LocalFunction::tabulate({{0, 0}, {1, 0}}, 2, 0, [](std::span<const int> st) { return Rational(st[0] - 2 * st[0] * st[1]); });
  const auto exact = orbit_sum_differential({f}, s.action, s.window, s.phi);
  CHECK(extract_cocycle(exact, s.phi, s.basis, s.action).a == MatrixQ::Zero(1, 2));
  const Form zero(s.window, 2, 0, 0);
  CHECK(extract_cocycle(zero, s.phi, s.basis, s.action).a == MatrixQ::Zero(1, 2));
}

TEST_CASE("decomposition round trip") {
  for (int d : {1, 2}) {
    const auto s = setup(d, 3);
    MatrixQ a(1, d);
    for (int j = 0; j < d; ++j) a(0, j) = Rational(j + 2, 3);
    Vertex o(d, 0), t(d, 0);
    t[0] = 1;
    const auto f = LocalFunction::tabulate({o, t}, 2, 0, [](std::span<const int> st) { return Rational(2 * st[0] - 5 * st[1] + st[0] * st[1]); });
    Form omega = orbit_sum_differential({f}, s.action, s.window, s.phi);
    omega += build_omega_rho(a, s.action, s.domain, s.window, s.basis, s.phi);
    omega.set_radius(effective_radius(omega));
    const auto res = varadhan_decompose(omega, s.phi, s.basis, s.action, s.domain);
    CHECK(res.a == a);
    CHECK(res.residual == 0);
    CHECK(res.edges_checked > 0);
  }
}

TEST_CASE("zero form decomposes trivially") {
  const auto s = setup(1, 3);
  Form zero(s.window, 2, 0, 0);
  const auto res = varadhan_decompose(zero, s.phi, s.basis, s.action, s.domain);
  CHECK(res.a == MatrixQ::Zero(1, 1));
  CHECK(res.residual == 0);
  for (const auto& term : res.terms) CHECK(term.equals(LocalFunction::tabulate(term.support(), 2, 0, [](std::span<const int>) { return Rational(0); })));
}

TEST_CASE("non-invariant forms are rejected") {
  const auto s = setup(1, 3);
  const auto f = LocalFunction::tabulate({{0}, {1}}, 2, 0, [](std::span<const int> st) { return Rational(st[0] * st[1]); });
  Form omega = differential(f, s.window, s.phi);
  omega.set_radius(effective_radius(omega));
  CHECK_THROWS_AS(varadhan_decompose(omega, s.phi, s.basis, s.action, s.domain), Error);
}

TEST_CASE("two-species counterexample") {
  const auto rep = counterexample_z_multispecies(4);
  CHECK(rep.closed);
  CHECK(rep.potential_matches);
  CHECK(rep.formula_matches);
  CHECK(rep.h_left_right == 1);
  CHECK(rep.h_right_left == 0);
  CHECK(rep.asymmetric);
  CHECK(rep.cocycle);
  CHECK(rep.splitting_infeasible);
  CHECK_FALSE(rep.splitting.certificate.empty());
}
