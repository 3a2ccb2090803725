#include "ucoh/cohomology.hpp"

#include "ucoh/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ucoh {

namespace {

std::string quantity_string(const Quantity& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) s += (i ? "," : "") + to_string(q[i]);
  return s + ")";
}

Quantity sum(Quantity a, const Quantity& b) {
  add_quantity(a, b);
  return a;
}

Configuration restrict_to(const Configuration& eta, const std::vector<Vertex>& region) {
  Configuration out(eta.base());
  for (const auto& x : region) out.set(x, eta.at(x));
  return out;
}

std::size_t checked_power(int n, std::size_t k, std::size_t budget) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= static_cast<std::size_t>(n);
    if (total > budget) throw Error(ErrorKind::budget_exceeded, "probe enumeration exceeds the budget");
  }
  return total;
}

/// Calls fn for every configuration on `region` (sorted), in lexicographic order.
void for_each_configuration(const std::vector<Vertex>& region, int num_states, int base,
                            const std::function<void(const Configuration&)>& fn) {
  std::vector<int> s(region.size(), 0);
  while (true) {
    Configuration eta(base);
    for (std::size_t i = 0; i < region.size(); ++i) eta.set(region[i], s[i]);
    fn(eta);
    std::size_t p = s.size();
    while (p > 0 && ++s[p - 1] == num_states) s[--p] = 0;
    if (p == 0) return;
  }
}

std::optional<std::string> orientation_of(const Locale& locale, const ProbePair& probe) {
  long max_first = 0, min_first = 0, max_second = 0, min_second = 0;
  bool init = false;
  for (const auto* set : {&probe.first, &probe.second})
    for (const auto& x : *set)
      if (!locale.line_position(x)) return std::nullopt;
  for (const auto& x : probe.first) {
    const long p = *locale.line_position(x);
    max_first = init ? std::max(max_first, p) : p;
    min_first = init ? std::min(min_first, p) : p;
    init = true;
  }
  init = false;
  for (const auto& x : probe.second) {
    const long p = *locale.line_position(x);
    max_second = init ? std::max(max_second, p) : p;
    min_second = init ? std::min(min_second, p) : p;
    init = true;
  }
  if (max_first < min_second) return "left-right";
  if (max_second < min_first) return "right-left";
  return "interleaved";
}

}  // namespace

ProbePlan default_probe_plan(const Window& window, long form_radius, int ball_radius, std::size_t max_pairs) {
  const auto& locale = window.locale();
  const auto centers = interior(window, ball_radius);
  const long gap = 2L * ball_radius + form_radius + 1;
  ProbePlan plan;
  for (std::size_t i = 0; i < centers.size() && plan.size() < max_pairs; ++i) {
    for (std::size_t j = i + 1; j < centers.size() && plan.size() < max_pairs; ++j) {
      if (distance(locale, centers[i], centers[j]) != gap) continue;
      ProbePair probe{ball_vertices(locale, centers[i], ball_radius), ball_vertices(locale, centers[j], ball_radius)};
      std::sort(probe.first.begin(), probe.first.end());
      std::sort(probe.second.begin(), probe.second.end());
      if (set_distance(locale, probe.first, probe.second) <= form_radius) continue;
      if (const auto o = orientation_of(locale, probe)) {
        if (*o == "right-left") std::swap(probe.first, probe.second);
        probe.orientation = "left-right";
        plan.push_back(std::move(probe));
      } else {
        plan.push_back(probe);
        plan.push_back({probe.second, probe.first, "unique"});
      }
    }
  }
  if (plan.empty()) throw Error(ErrorKind::window_too_small, "no probe pair fits inside the window");
  return plan;
}

const Rational* PairingTable::find(const Quantity& a, const Quantity& b) const {
  const auto it = cells.find({a, b});
  return it == cells.end() ? nullptr : &it->second.value;
}

PairingTable compute_pairing(const ConfigFunction& f, const Window& window, const Interaction& phi,
                             const ConsvBasis& basis, long form_radius, const ProbePlan& plan, std::size_t budget) {
  const auto& locale = window.locale();
  PairingTable table;
  std::set<std::string> orientations;
  for (ProbePair probe : plan) {
    if (probe.first.empty() || probe.second.empty()) throw Error(ErrorKind::invalid_input, "empty probe region");
    std::sort(probe.first.begin(), probe.first.end());
    std::sort(probe.second.begin(), probe.second.end());
    for (const auto* set : {&probe.first, &probe.second})
      for (const auto& x : *set)
        if (!window.contains(x)) throw Error(ErrorKind::window_too_small, "probe vertex " + vertex_string(x) + " is outside the window");
    if (set_distance(locale, probe.first, probe.second) <= form_radius)
      throw Error(ErrorKind::invalid_input, "probe regions are within the form radius of each other");
    if (const auto o = orientation_of(locale, probe)) {
      if (*o == "interleaved") throw Error(ErrorKind::invalid_input, "probe regions interleave on the line");
      probe.orientation = *o;
      orientations.insert(*o);
    }
    const auto joint = support_union(probe.first, probe.second);
    checked_power(phi.num_states(), joint.size(), budget);
    std::map<Configuration, Rational> cache;
    const auto eval = [&](const Configuration& eta) -> const Rational& {
      auto it = cache.find(eta);
      if (it == cache.end()) it = cache.emplace(eta, f(eta)).first;
      return it->second;
    };
    for_each_configuration(joint, phi.num_states(), phi.base(), [&](const Configuration& eta) {
      const auto a = restrict_to(eta, probe.first);
      const auto b = restrict_to(eta, probe.second);
      const Rational value = eval(eta) - eval(a) - eval(b);
      QuantityPair key{quantity_of(eta, basis, probe.first), quantity_of(eta, basis, probe.second)};
      auto [it, inserted] = table.cells.emplace(key, PairingCell{value, 1});
      if (inserted) return;
      if (it->second.value != value) {
        std::ostringstream os;
        os << "cell " << quantity_string(key.first) << "," << quantity_string(key.second) << " takes values "
           << to_string(it->second.value) << " and " << to_string(value) << " at "
           << configuration_string(eta, phi.states());
        throw Error(ErrorKind::ill_defined_pairing, os.str());
      }
      ++it->second.samples;
    });
    table.probes.push_back(std::move(probe));
  }
  if (orientations.size() > 1) throw Error(ErrorKind::invalid_input, "probe plan mixes orientations on the line");
  return table;
}

CocycleReport check_cocycle_and_symmetry(const PairingTable& table) {
  CocycleReport report;
  std::multimap<Quantity, const Quantity*, QuantityLess> by_first;
  for (const auto& [key, cell] : table.cells) by_first.emplace(key.first, &key.second);
  for (const auto& [key, cell] : table.cells) {
    const auto& [a, b] = key;
    const auto range = by_first.equal_range(b);
    for (auto it = range.first; it != range.second; ++it) {
      const Quantity& c = *it->second;
      const Rational* ab_c = table.find(sum(a, b), c);
      const Rational* a_bc = table.find(a, sum(b, c));
      if (!ab_c || !a_bc) continue;
      ++report.triples_checked;
      if (cell.value + *ab_c != *table.find(b, c) + *a_bc) {
        report.cocycle = false;
        report.cocycle_violations.push_back({a, b, c});
      }
    }
    if (const Rational* ba = table.find(b, a)) {
      ++report.pairs_checked;
      if (*ba != cell.value) {
        report.symmetric = false;
        if (QuantityLess{}(a, b)) report.symmetry_violations.push_back(key);
      }
    }
  }
  return report;
}

namespace {

bool verify_splitting(const PairingTable& table, const QuantityMap& h) {
  for (const auto& [key, cell] : table.cells) {
    const auto ia = h.find(key.first), ib = h.find(key.second), ic = h.find(sum(key.first, key.second));
    if (ia == h.end() || ib == h.end() || ic == h.end()) return false;
    if (ia->second + ib->second - ic->second != cell.value) return false;
  }
  return true;
}

std::optional<QuantityMap> rank_one_iteration(const PairingTable& table, const std::set<Quantity, QuantityLess>& domain,
                                              const Quantity& zero, const Rational& h0) {
  // Unit: gcd of the nonzero second arguments, all of which must be integers.
  Integer unit = 0;
  for (const auto& [key, cell] : table.cells) {
    const Rational& b = key.second[0];
    if (b == 0) continue;
    if (!is_integer(b)) return std::nullopt;
    unit = boost::multiprecision::gcd(unit, Integer(boost::multiprecision::abs(numerator(b))));
  }
  if (unit == 0) return std::nullopt;
  const Quantity u{Rational(unit)};
  const Quantity minus_u{Rational(-unit)};
  QuantityMap h;
  h[zero] = h0;
  h[u] = 0;
  for (Quantity n = u;;) {
    const Rational* c = table.find(n, u);
    const Quantity next = sum(n, u);
    if (!c || !domain.count(next)) break;
    h[next] = h[n] - *c;
    n = next;
  }
  for (Quantity n = zero;;) {
    const Quantity prev = sum(n, minus_u);
    const Rational* c = table.find(prev, u);
    if (!c || !domain.count(prev)) break;
    h[prev] = *c + h[n];
    n = prev;
  }
  for (const auto& q : domain)
    if (!h.count(q)) return std::nullopt;
  return h;
}

}  // namespace

SplittingResult solve_splitting(const PairingTable& table) {
  if (table.cells.empty()) throw Error(ErrorKind::invalid_input, "empty pairing table");
  const auto cocycle = check_cocycle_and_symmetry(table);
  if (!cocycle.cocycle) {
    const auto& v = cocycle.cocycle_violations.front();
    throw Error(ErrorKind::cocycle_violated, "cocycle identity fails at " + quantity_string(v[0]) + "," +
                                                 quantity_string(v[1]) + "," + quantity_string(v[2]));
  }
  std::set<Quantity, QuantityLess> domain;
  for (const auto& [key, cell] : table.cells) {
    domain.insert(key.first);
    domain.insert(key.second);
    domain.insert(sum(key.first, key.second));
  }
  const Quantity zero(table.cells.begin()->first.first.size(), Rational(0));
  domain.insert(zero);
  const Rational* h00 = table.find(zero, zero);
  const Rational h0 = h00 ? *h00 : Rational(0);

  SplittingResult out;
  if (zero.size() == 1) {
    if (auto h = rank_one_iteration(table, domain, zero, h0); h && verify_splitting(table, *h)) {
      out.feasible = true;
      out.method = "rank-1 iteration";
      out.h = std::move(*h);
      return out;
    }
  }
  out.method = "linear";
  std::vector<Quantity> unknowns(domain.begin(), domain.end());
  const auto col = [&](const Quantity& q) {
    return static_cast<Eigen::Index>(std::lower_bound(unknowns.begin(), unknowns.end(), q, QuantityLess{}) - unknowns.begin());
  };
  const auto rows = static_cast<Eigen::Index>(table.cells.size() + 1);
  MatrixQ a = MatrixQ::Zero(rows, static_cast<Eigen::Index>(unknowns.size()));
  VectorQ b = VectorQ::Zero(rows);
  std::vector<QuantityPair> row_keys;
  Eigen::Index r = 0;
  for (const auto& [key, cell] : table.cells) {
    a(r, col(key.first)) += 1;
    a(r, col(key.second)) += 1;
    a(r, col(sum(key.first, key.second))) -= 1;
    b(r) = cell.value;
    row_keys.push_back(key);
    ++r;
  }
  a(r, col(zero)) = 1;
  b(r) = h0;
  row_keys.emplace_back(zero, zero);
  const auto sol = solve_affine(a, b);
  if (!sol.feasible) {
    for (Eigen::Index i = 0; i < rows; ++i)
      if (sol.certificate(i) != 0) out.certificate.emplace_back(row_keys[static_cast<std::size_t>(i)], sol.certificate(i));
    out.certificate_value = sol.certificate.dot(b);
    return out;
  }
  out.feasible = true;
  for (std::size_t i = 0; i < unknowns.size(); ++i) out.h[unknowns[i]] = sol.solution(static_cast<Eigen::Index>(i));
  return out;
}

Uniformized uniformize(const ConfigFunction& f, const Window& window, const Interaction& phi, const ConsvBasis& basis,
                       long form_radius, const ProbePlan& plan) {
  Uniformized out;
  out.table = compute_pairing(f, window, phi, basis, form_radius, plan);
  out.splitting = solve_splitting(out.table);
  if (!out.splitting.feasible) {
    std::ostringstream os;
    os << "no splitting of the pairing exists; certificate combines " << out.splitting.certificate.size()
       << " cells to " << to_string(out.splitting.certificate_value) << " != 0";
    throw Error(ErrorKind::splitting_infeasible, os.str());
  }
  auto h = std::make_shared<const QuantityMap>(out.splitting.h);
  auto basis_copy = std::make_shared<const ConsvBasis>(basis);
  out.g = [f, h, basis_copy](const Configuration& eta) {
    const auto q = quantity_of(eta, *basis_copy);
    const auto it = h->find(q);
    if (it == h->end())
      throw Error(ErrorKind::window_too_small, "quantity " + quantity_string(q) + " lies outside the splitting domain");
    return f(eta) + it->second;
  };

  // Local-difference criterion on each probe union.
  const auto& locale = window.locale();
  constexpr std::size_t kCriterionBudget = 60'000;
  std::size_t skipped = 0;
  for (const auto& probe : out.table.probes) {
    const auto lambda = support_union(probe.first, probe.second);
    std::size_t configs = 1;
    bool too_big = false;
    for (std::size_t i = 0; i < lambda.size() && !too_big; ++i)
      too_big = (configs *= static_cast<std::size_t>(phi.num_states())) > kCriterionBudget;
    if (too_big) {
      ++skipped;
      continue;
    }
    ++out.criterion.sets_checked;
    for (const auto& x : lambda) {
      std::vector<Vertex> without_x, near, near_without_x;
      for (const auto& y : lambda) {
        if (y != x) without_x.push_back(y);
        if (distance(locale, x, y) <= form_radius) {
          near.push_back(y);
          if (y != x) near_without_x.push_back(y);
        }
      }
      for_each_configuration(lambda, phi.num_states(), phi.base(), [&](const Configuration& eta) {
        if (!out.criterion.holds) return;
        ++out.criterion.evaluations;
        const Rational lhs = out.g(eta) - out.g(restrict_to(eta, without_x));
        const Rational rhs = out.g(restrict_to(eta, near)) - out.g(restrict_to(eta, near_without_x));
        if (lhs != rhs) {
          out.criterion.holds = false;
          out.criterion.witness = eta;
        }
      });
    }
  }
  out.criterion.scope = std::to_string(out.criterion.sets_checked) + " probe unions checked";
  if (skipped) out.criterion.scope += ", " + std::to_string(skipped) + " skipped as too large";

  const auto& first = out.table.probes.front();
  auto domain = support_union(first.first, first.second);
  std::size_t configs = 1;
  for (std::size_t i = 0; i < domain.size(); ++i) configs *= static_cast<std::size_t>(phi.num_states());
  if (configs > kCriterionBudget) domain = first.first;
  out.certificate = uniformity(expand(out.g, domain, phi.num_states(), phi.base()), locale, form_radius);
  return out;
}

H0Report h0_report(const WindowPtr& window, const Interaction& phi, const ConsvBasis& basis, const GraphOptions& options) {
  const auto graph = build_transition_graph(window, phi, options);
  const auto& space = graph.space();
  H0Report report;
  report.num_components = graph.num_components();
  report.num_configurations = space.size();
  std::vector<Quantity> state_q;
  for (int s = 0; s < phi.num_states(); ++s) state_q.push_back(quantity_of_state(basis, s));
  std::vector<std::optional<std::pair<Quantity, std::size_t>>> per_component(static_cast<std::size_t>(graph.num_components()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    Quantity q = zero_quantity(basis);
    for (State s : space.config(i)) add_quantity(q, state_q[s]);
    auto& slot = per_component[static_cast<std::size_t>(graph.component(i))];
    if (!slot) {
      slot = std::make_pair(std::move(q), i);
    } else if (slot->first != q && report.constant_on_components) {
      report.constant_on_components = false;
      report.witness = std::make_pair(space.to_configuration(slot->second), space.to_configuration(i));
    }
  }
  std::map<Quantity, std::size_t, QuantityLess> first_config;
  for (const auto& slot : per_component) {
    auto [it, inserted] = first_config.emplace(slot->first, slot->second);
    if (!inserted && report.separates) {
      report.separates = false;
      if (!report.witness) report.witness = std::make_pair(space.to_configuration(it->second), space.to_configuration(slot->second));
    }
  }
  for (const auto& [q, i] : first_config) report.values.push_back(q);
  return report;
}

}  // namespace ucoh
