// Acceptance run: one PASS/FAIL line per criterion, with pinned time limits.
#include "ucoh/decomposition.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace ucoh;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

// Collects failed checks without stopping the criterion.
class Checks {
 public:
  void expect(bool condition, const std::string& what) {
    ++total_;
    if (!condition) {
      ++failed_;
      if (first_failure_.empty()) first_failure_ = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << (total_ - failed_) << "/" << total_ << " checks";
    if (failed_) os << "; first failure: " << first_failure_;
    return {failed_ == 0, os.str()};
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::string first_failure_;
};

WindowPtr make_box(int d, const Vertex& lo, const Vertex& hi) {
  return std::make_shared<const Window>(box(make_euclidean(d), lo, hi));
}

LocalFunction random_function(std::mt19937& rng, std::vector<Vertex> support, int num_states, int base) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::sort(support.begin(), support.end());
  return LocalFunction::tabulate(std::move(support), num_states, base,
                                 [&](std::span<const int>) { return Rational(num(rng), den(rng)); });
}

MatrixQ random_cocycle(std::mt19937& rng, int dim, int rank) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  MatrixQ a(dim, rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = Rational(num(rng), den(rng));
  return a;
}

Quantity totals(const Configuration& eta, const ConsvBasis& basis) {
  Quantity q = zero_quantity(basis);
  for (const auto& [x, s] : eta.sites()) add_quantity(q, quantity_of_state(basis, s));
  return q;
}

Outcome catalog_dimensions() {
  Checks c;
  const std::vector<std::pair<std::string, int>> expected{
      {"exclusion", 1}, {"multispecies:2", 2},  {"multispecies:3", 3}, {"generalized-exclusion:2", 1},
      {"lattice-gas:2", 2}, {"spin3", 1},       {"glauber", 0},        {"pair-creation", 0}};
  for (const auto& [name, dim] : expected) {
    const auto basis = solve_conserved_quantities(catalog_interaction(name));
    c.expect(basis.dim() == dim, name + " has dimension " + std::to_string(basis.dim()));
  }
  return c.outcome(std::to_string(expected.size()) + " interactions");
}

Outcome expansions() {
  Checks c;
  std::mt19937 rng(101);
  const std::vector<Vertex> line{{0}, {1}, {2}, {3}, {4}, {5}, {6}};
  const std::vector<Vertex> plane{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {2, 1}};
  std::size_t count = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    const std::size_t max_sites = n == 2 ? 7 : 5;  // n^sites <= 3^5
    const auto& pool = trial % 3 == 0 ? plane : line;
    std::vector<Vertex> support(pool.begin(), pool.end());
    std::shuffle(support.begin(), support.end(), rng);
    support.resize(std::min(max_sites, std::size_t{1} + static_cast<std::size_t>(trial) % std::min(max_sites, pool.size())));
    const auto f = random_function(rng, support, n, trial % n);
    const auto rec = expand(f, ExpansionMethod::recursion);
    const auto mob = expand(f, ExpansionMethod::mobius);
    bool agree = rec.terms.size() == mob.terms.size();
    for (const auto& [mask, term] : rec.terms) {
      const auto it = mob.terms.find(mask);
      agree = agree && it != mob.terms.end() && term.equals(it->second) && term.has_exact_support();
    }
    c.expect(agree, "methods disagree on trial " + std::to_string(trial));
    c.expect(rec.reconstruct().equals(f), "reconstruction fails on trial " + std::to_string(trial));
    ++count;
  }
  return c.outcome(std::to_string(count) + " functions");
}

Outcome closed_exact() {
  Checks c;
  std::mt19937 rng(202);
  struct Case {
    WindowPtr window;
    std::string model;
  };
  const std::vector<Case> cases{{make_box(1, {0}, {3}), "exclusion"},
                                {make_box(1, {0}, {3}), "multispecies:2"},
                                {make_box(1, {0}, {4}), "lattice-gas:2"},
                                {make_box(2, {0, 0}, {1, 1}), "exclusion"},
                                {make_box(2, {0, 0}, {2, 1}), "spin3"}};
  std::size_t exact = 0, perturbed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& cs = cases[static_cast<std::size_t>(trial) % cases.size()];
    const auto phi = catalog_interaction(cs.model);
    const auto& verts = cs.window->vertices();
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    std::vector<Vertex> support{verts[pick(rng)], verts[pick(rng)]};
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto f = random_function(rng, support, phi.num_states(), phi.base());
    const auto form = differential(f, cs.window, phi);
    const auto tag = cs.model + " trial " + std::to_string(trial);

    c.expect(is_closed(form, phi).closed, "exact form not closed: " + tag);
    const auto v = integrate(form, phi);
    const auto values = tabulate(*v.space, f);
    std::map<int, Rational> offset;
    bool constant = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto [it, fresh] = offset.emplace(v.component[i], values[i] - v.values[i]);
      constant = constant && it->second == values[i] - v.values[i];
    }
    c.expect(constant, "potential differs from f by a non-constant: " + tag);
    ++exact;

    // Perturb one directed edge at a local state pair the interaction moves.
    const auto entries = phi.entries();
    if (entries.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_entry(0, entries.size() - 1);
    const auto entry = entries[pick_entry(rng)];
    const auto& graph_edges = cs.window->edges();
    std::uniform_int_distribution<std::size_t> pick_edge(0, graph_edges.size() - 1);
    const int e = static_cast<int>(pick_edge(rng));
    const Vertex o = cs.window->vertex(graph_edges[static_cast<std::size_t>(e)].o);
    const Vertex t = cs.window->vertex(graph_edges[static_cast<std::size_t>(e)].t);
    std::vector<Vertex> sup{o, t};
    std::sort(sup.begin(), sup.end());
    const bool o_first = sup.front() == o;
    const auto bump = LocalFunction::tabulate(sup, phi.num_states(), phi.base(), [&](std::span<const int> s) {
      const int so = o_first ? s[0] : s[1];
      const int st = o_first ? s[1] : s[0];
      return Rational(so == entry[0] && st == entry[1] ? 1 : 0);
    });
    Form broken = form;
    broken.at(e) += bump;
    const auto rep = is_closed(broken, phi);
    bool witness_ok = !rep.closed && !rep.witness.empty() && is_valid_path(rep.witness, phi) &&
                      rep.witness.front().source == rep.witness.back().target && rep.witness_integral != 0 &&
                      integrate_along(broken, rep.witness) == rep.witness_integral;
    c.expect(witness_ok, "perturbation not detected with a valid witness: " + tag);
    ++perturbed;
  }
  return c.outcome(std::to_string(exact) + " exact forms, " + std::to_string(perturbed) + " perturbations");
}

Outcome horizontality() {
  Checks c;
  const std::vector<WindowPtr> windows{make_box(1, {0}, {3}), make_box(2, {0, 0}, {1, 1})};
  std::size_t edges = 0;
  for (const auto& name : catalog_names()) {
    const auto phi = catalog_interaction(name);
    const auto basis = solve_conserved_quantities(phi);
    for (const auto& window : windows) {
      for (int i = 0; i < basis.dim(); ++i) {
        const auto total = LocalFunction::tabulate(window->vertices(), phi.num_states(), phi.base(), [&](std::span<const int> s) {
          Rational sum(0);
          for (int st : s) sum += basis.value(i, st);
          return sum;
        });
        const auto form = differential(total, window, phi);
        for (std::size_t e = 0; e < form.num_edges(); ++e) {
          c.expect(form.at(static_cast<int>(e)).is_zero(), name + " quantity " + std::to_string(i) + " moves");
          ++edges;
        }
      }
    }
  }
  return c.outcome(std::to_string(edges) + " edge differentials");
}

Outcome irreducibility() {
  Checks c;
  const std::vector<std::string> models{"exclusion", "multispecies:2", "generalized-exclusion:2",
                                        "lattice-gas:2", "spin3", "glauber"};
  std::vector<WindowPtr> windows;
  for (int len = 3; len <= 5; ++len) windows.push_back(make_box(1, {0}, {len - 1}));
  windows.push_back(make_box(2, {0, 0}, {1, 1}));
  windows.push_back(make_box(2, {0, 0}, {2, 1}));
  std::size_t configs = 0;
  for (const auto& name : models) {
    const auto phi = catalog_interaction(name);
    const auto basis = solve_conserved_quantities(phi);
    for (const auto& w : windows) {
      const auto rep = check_irreducible_quantification(phi, basis, w);
      c.expect(rep.fibers_connected, name + " has a disconnected fiber on " + std::to_string(w->vertices().size()) + " sites");
      configs += rep.num_configurations;
    }
  }
  const auto odd = catalog_interaction("pair-creation");
  const auto rep = check_irreducible_quantification(odd, solve_conserved_quantities(odd), make_box(1, {0}, {1}));
  c.expect(!rep.fibers_connected && rep.witness.has_value(), "pair-creation model gives no disconnection witness");
  return c.outcome(std::to_string(configs) + " configurations");
}

Outcome pairing_laws() {
  Checks c;
  std::size_t cells = 0;
  // Z^2: a function whose long-range part is a product of totals plus a short-range part.
  {
    const auto w = box(make_euclidean(2), {-4, -4}, {4, 4});
    const auto phi = catalog_interaction("multispecies:2");
    const auto basis = solve_conserved_quantities(phi);
    const ConfigFunction f = [&](const Configuration& eta) {
      const auto q = totals(eta, basis);
      Rational local(0);
      for (const auto& [x, s] : eta.sites()) {
        Vertex right = x;
        ++right[0];
        if (s == 1 && eta.at(right) == 2) local += 1;
      }
      return q[0] * q[1] * 3 + q[0] * q[0] - local;
    };
    const auto plan = default_probe_plan(w, 1, 1, 8);
    bool both_orders = false;
    for (std::size_t i = 0; i < plan.size(); ++i)
      for (std::size_t j = 0; j < plan.size(); ++j)
        both_orders = both_orders || (plan[i].first == plan[j].second && plan[i].second == plan[j].first);
    c.expect(both_orders, "Z^2 probe plan lacks swapped pairs");
    const auto table = compute_pairing(f, w, phi, basis, 1, plan);
    const auto laws = check_cocycle_and_symmetry(table);
    c.expect(laws.cocycle, "Z^2 cocycle identity fails");
    c.expect(laws.symmetric, "Z^2 pairing not symmetric");
    c.expect(laws.triples_checked > 0, "no closed triples on Z^2");
    for (const auto& [key, cell] : table.cells) {
      const auto& [a, b] = key;
      c.expect(cell.value == 3 * (a[0] * b[1] + a[1] * b[0]) + 2 * a[0] * b[0], "Z^2 cell value");
    }
    cells += table.cells.size();
  }
  // Z with the two-species current: the pairing is alpha_1 beta_2 and depends on orientation.
  {
    const auto rep = counterexample_z_multispecies(4);
    const auto laws = check_cocycle_and_symmetry(rep.table);
    c.expect(laws.cocycle, "Z cocycle identity fails");
    c.expect(!laws.symmetric, "Z pairing unexpectedly symmetric");
    for (const auto& [key, cell] : rep.table.cells) {
      const auto& [a, b] = key;
      c.expect(cell.value == a[0] * b[1], "Z cell differs from alpha_1 beta_2");
    }
    c.expect(rep.h_left_right == 1 && rep.swapped_value == 0, "orientation asymmetry not observed");
    cells += rep.table.cells.size();
  }
  return c.outcome(std::to_string(cells) + " cells");
}

Outcome decomposition_roundtrips() {
  Checks c;
  std::mt19937 rng(707);
  std::size_t runs = 0, edges = 0;
  for (int trial = 0; trial < 22; ++trial) {
    const int d = trial < 12 ? 1 : 2;
    const std::string model = d == 1 && trial % 3 == 2 ? "multispecies:2" : "exclusion";
    const auto locale = make_euclidean(d);
    const auto window = std::make_shared<const Window>(box(locale, Vertex(d, -3), Vertex(d, 3)));
    const auto phi = catalog_interaction(model);
    const auto basis = solve_conserved_quantities(phi);
    const auto action = *locale->default_action();
    const std::vector<Vertex> domain{Vertex(d, 0)};
    const auto a = random_cocycle(rng, basis.dim(), d);
    Vertex step(d, 0);
    step[static_cast<std::size_t>(rng() % static_cast<unsigned>(d))] = 1;
    const auto f = random_function(rng, {Vertex(d, 0), step}, phi.num_states(), phi.base());
    Form omega = orbit_sum_differential({f}, action, window, phi);
    omega += build_omega_rho(a, action, domain, window, basis, phi);
    omega.set_radius(effective_radius(omega));
    const auto tag = model + " d=" + std::to_string(d) + " trial " + std::to_string(trial);
    try {
      const auto res = varadhan_decompose(omega, phi, basis, action, domain);
      c.expect(res.a == a, "cocycle not recovered: " + tag);
      c.expect(res.residual == 0 && res.edges_checked > 0, "nonzero residual: " + tag);
      edges += res.edges_checked;
    } catch (const Error& err) {
      c.expect(false, tag + ": " + err.what());
    }
    ++runs;
  }
  return c.outcome(std::to_string(runs) + " forms, " + std::to_string(edges) + " interior edges");
}

Outcome omega_rho_extraction() {
  Checks c;
  std::mt19937 rng(808);
  struct Case {
    int d;
    std::string model;
  };
  const std::vector<Case> cases{{1, "exclusion"}, {1, "multispecies:2"}, {1, "lattice-gas:2"},
                                {2, "exclusion"}, {2, "multispecies:2"}, {3, "exclusion"}};
  std::size_t runs = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const auto& cs = cases[static_cast<std::size_t>(trial) % cases.size()];
    const auto locale = make_euclidean(cs.d);
    const int half = cs.d == 3 ? 2 : 3;
    const auto window = std::make_shared<const Window>(box(locale, Vertex(cs.d, -half), Vertex(cs.d, half)));
    const auto phi = catalog_interaction(cs.model);
    const auto basis = solve_conserved_quantities(phi);
    const auto action = *locale->default_action();
    const auto a = random_cocycle(rng, basis.dim(), cs.d);
    const auto om = build_omega_rho(a, action, {Vertex(cs.d, 0)}, window, basis, phi);
    c.expect(extract_cocycle(om, phi, basis, action).a == a, cs.model + " d=" + std::to_string(cs.d));
    ++runs;
  }
  return c.outcome(std::to_string(runs) + " cocycles");
}

Outcome counterexample() {
  Checks c;
  const auto rep = counterexample_z_multispecies(4);
  c.expect(rep.closed, "form not closed");
  c.expect(rep.potential_matches && rep.formula_matches, "potential does not match the crossing count");
  c.expect(rep.asymmetric, "pairing symmetric");
  c.expect(rep.cocycle, "cocycle identity fails");
  c.expect(rep.splitting_infeasible && !rep.splitting.certificate.empty(), "splitting not certified infeasible");
  return c.outcome("half width " + std::to_string(rep.half_width) + ", " + std::to_string(rep.table.cells.size()) + " cells");
}

Outcome transferability() {
  Checks c;
  struct Case {
    std::string name;
    LocalePtr locale;
    Transferability expected;
  };
  const std::vector<Case> cases{
      {"Z", make_euclidean(1), Transferability::weakly_not_transferable},
      {"Z^2", make_euclidean(2), Transferability::strongly_transferable},
      {"Z^3", make_euclidean(3), Transferability::strongly_transferable},
      {"cross", make_region(make_euclidean(2), "cross"), Transferability::transferable},
      {"half-plane", make_region(make_euclidean(2), "half-plane-axis"), Transferability::transferable},
      {"free group rank 2", make_free_group(2), Transferability::transferable}};
  for (const auto& cs : cases) {
    const auto rep = classify_transferability(*cs.locale);
    c.expect(rep.result == cs.expected, cs.name + " classified " + std::string(transferability_name(rep.result)));
  }
  // The bounded probe must agree where it applies.
  for (const auto& cs : {cases[0], cases[1]}) {
    const auto rep = classify_transferability(*cs.locale, {}, true);
    c.expect(rep.result == cs.expected, cs.name + " probe gives " + std::string(transferability_name(rep.result)));
  }
  return c.outcome(std::to_string(cases.size()) + " locales");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "conserved-quantity dimensions", 1.0, catalog_dimensions},
      {2, "expansion uniqueness and reconstruction", 30.0, expansions},
      {3, "closed forms are exact on windows", 60.0, closed_exact},
      {4, "conserved totals are horizontal", 60.0, horizontality},
      {5, "irreducible quantification", 300.0, irreducibility},
      {6, "pairing laws", 120.0, pairing_laws},
      {7, "decomposition round trip", 600.0, decomposition_roundtrips},
      {8, "cocycle of omega_rho", 120.0, omega_rho_extraction},
      {9, "two-species counterexample", 60.0, counterexample},
      {10, "transferability catalog", 60.0, transferability}};

  int failures = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < cr.limit_seconds;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s; %.2fs of %.0fs%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(),
                out.detail.c_str(), seconds, cr.limit_seconds, in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
