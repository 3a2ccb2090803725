#include "ucoh/decomposition.hpp"

#include "ucoh/linalg.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace ucoh {

namespace {

std::vector<int> coordinates_of(const GroupAction& action, const std::vector<Vertex>& domain, const Vertex& x) {
  const auto coord = orbit_coordinate(action, domain, x);
  if (!coord) throw Error(ErrorKind::not_a_tiling, vertex_string(x) + " is not covered by the fundamental domain");
  return action.abelianize(coord->first);
}

/// Distinct group elements mapping some vertex of `from` onto some vertex of `to`.
std::set<GroupElement> transporters(const GroupAction& action, const std::vector<Vertex>& from,
                                    const std::vector<Vertex>& to) {
  std::set<GroupElement> out;
  for (const auto& s : from)
    for (const auto& p : to)
      if (auto g = action.transporter(s, p); g && action.apply(*g, s) == p) out.insert(std::move(*g));
  return out;
}

LocalFunction orbit_sum_near_edge(const std::vector<LocalFunction>& terms, const GroupAction& action,
                                  const Vertex& o, const Vertex& t, int num_states, int base) {
  LocalFunction sum = LocalFunction::zero(num_states, base);
  const std::vector<Vertex> ends{o, t};
  for (const auto& term : terms) {
    if (term.support().empty()) continue;
    for (const auto& g : transporters(action, term.support(), ends)) sum += act_on_function(action, g, term);
  }
  return sum;
}

Rational max_abs(const LocalFunction& f) {
  Rational best(0);
  for (const auto& q : f.table()) best = std::max(best, q < 0 ? Rational(-q) : q);
  return best;
}

WindowPtr sub_window(const Window& window, const Vertex& center, long radius) {
  std::vector<Vertex> verts;
  for (auto& x : ball_vertices(window.locale(), center, radius))
    if (window.contains(x)) verts.push_back(std::move(x));
  return std::make_shared<const Window>(window.locale_ptr(), std::move(verts));
}

long max_displacement(const GroupAction& action, const Locale& locale, const Vertex& x) {
  long best = 0;
  for (int j = 0; j < action.rank(); ++j)
    best = std::max(best, distance(locale, x, action.apply(action.generator(j), x)));
  return best;
}

}  // namespace

LocalFunction act_on_function(const GroupAction& action, const GroupElement& g, const LocalFunction& f,
                              const Window* window) {
  auto out = f.relabeled([&](const Vertex& x) { return action.apply(g, x); });
  if (window)
    for (const auto& x : out.support())
      if (!window->contains(x)) throw Error(ErrorKind::support_leaves_window, vertex_string(x) + " leaves the window");
  return out;
}

Form act_on_form(const GroupAction& action, const GroupElement& g, const Form& form, std::vector<int>* undefined) {
  const auto& w = form.window();
  const auto ginv = action.inverse(g);
  Form out(form.window_ptr(), form.num_states(), form.base(), form.radius());
  for (int e = 0; e < static_cast<int>(w.edges().size()); ++e) {
    const auto& ed = w.edges()[static_cast<std::size_t>(e)];
    const auto* fn = form.find(action.apply(ginv, w.vertex(ed.o)), action.apply(ginv, w.vertex(ed.t)));
    if (!fn) {
      if (undefined) undefined->push_back(e);
      continue;
    }
    out.at(e) = act_on_function(action, g, *fn);
  }
  return out;
}

InvarianceReport is_shift_invariant(const Form& form, const GroupAction& action, long margin) {
  const auto& w = form.window();
  const auto inner_list = interior(w, margin);
  const std::set<Vertex> inner(inner_list.begin(), inner_list.end());
  InvarianceReport report;
  report.margin = margin;
  for (int j = 0; j < action.rank() && report.invariant; ++j) {
    for (const auto& g : {action.generator(j), action.inverse(action.generator(j))}) {
      for (const auto& ed : w.edges()) {
        const Vertex& o = w.vertex(ed.o);
        const Vertex& t = w.vertex(ed.t);
        const Vertex go = action.apply(g, o), gt = action.apply(g, t);
        if (!inner.count(o) || !inner.count(t) || !inner.count(go) || !inner.count(gt)) continue;
        const auto* image = form.find(go, gt);
        if (!image) continue;
        ++report.edges_checked;
        if (!act_on_function(action, g, form.at(*w.edge_index(ed.o, ed.t))).equals(*image)) {
          report.invariant = false;
          report.witness_edge = std::make_pair(o, t);
          report.generator = j;
          return report;
        }
      }
    }
  }
  if (report.edges_checked == 0) throw Error(ErrorKind::window_too_small, "no edge pairs inside the invariance margin");
  return report;
}

long interior_margin(const Form& form, const GroupAction& action, const std::vector<Vertex>& domain) {
  const auto& locale = form.window().locale();
  return form.radius() + diameter(locale, domain) + max_displacement(action, locale, domain.front());
}

std::vector<Rational> cocycle_value(const Cocycle& a, const ConsvBasis& basis, const std::vector<int>& coords,
                                    int num_states) {
  std::vector<Rational> out(static_cast<std::size_t>(num_states), Rational(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Rational coeff(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) coeff += a(i, j) * coords[static_cast<std::size_t>(j)];
    if (coeff == 0) continue;
    for (int s = 0; s < num_states; ++s) out[static_cast<std::size_t>(s)] += coeff * basis.value(static_cast<int>(i), s);
  }
  return out;
}

ConfigFunction theta(const Cocycle& a, const GroupAction& action, const std::vector<Vertex>& domain,
                     const ConsvBasis& basis, int num_states) {
  return [a, action, domain, basis, num_states](const Configuration& eta) {
    Rational total(0);
    for (const auto& [x, s] : eta.sites())
      total += cocycle_value(a, basis, coordinates_of(action, domain, x), num_states)[static_cast<std::size_t>(s)];
    return total;
  };
}

Form build_omega_rho(const Cocycle& a, const GroupAction& action, const std::vector<Vertex>& domain,
                     const WindowPtr& window, const ConsvBasis& basis, const Interaction& phi) {
  if (a.rows() != basis.dim() || a.cols() != action.rank())
    throw Error(ErrorKind::invalid_input, "cocycle matrix must be (basis dimension) x (generator count)");
  const int n = phi.num_states();
  Form form(window, n, phi.base(), 0);
  std::unordered_map<Vertex, std::vector<Rational>, VertexHash> rho_at;
  const auto rho = [&](const Vertex& x) -> const std::vector<Rational>& {
    auto it = rho_at.find(x);
    if (it == rho_at.end()) it = rho_at.emplace(x, cocycle_value(a, basis, coordinates_of(action, domain, x), n)).first;
    return it->second;
  };
  for (int e = 0; e < static_cast<int>(window->edges().size()); ++e) {
    const auto& ed = window->edges()[static_cast<std::size_t>(e)];
    const Vertex& o = window->vertex(ed.o);
    const Vertex& t = window->vertex(ed.t);
    const auto& ro = rho(o);
    const auto& rt = rho(t);
    const bool o_first = o < t;
    form.at(e) = LocalFunction::tabulate(o_first ? std::vector<Vertex>{o, t} : std::vector<Vertex>{t, o}, n,
                                         phi.base(), [&](std::span<const int> s) {
                                           const int so = s[o_first ? 0 : 1], st = s[o_first ? 1 : 0];
                                           const auto [no, nt] = phi.apply(so, st);
                                           return ro[static_cast<std::size_t>(no)] - ro[static_cast<std::size_t>(so)] +
                                                  rt[static_cast<std::size_t>(nt)] - rt[static_cast<std::size_t>(st)];
                                         });
  }
  return form;
}

Form orbit_sum_differential(const std::vector<LocalFunction>& terms, const GroupAction& action,
                            const WindowPtr& window, const Interaction& phi) {
  Form form(window, phi.num_states(), phi.base(), 0);
  for (int e = 0; e < static_cast<int>(window->edges().size()); ++e) {
    const auto& ed = window->edges()[static_cast<std::size_t>(e)];
    const Vertex& o = window->vertex(ed.o);
    const Vertex& t = window->vertex(ed.t);
    form.at(e) = gradient(orbit_sum_near_edge(terms, action, o, t, phi.num_states(), phi.base()), o, t, phi);
  }
  form.set_radius(effective_radius(form));
  return form;
}

Vertex window_center(const Window& window) {
  if (window.size() == 0) throw Error(ErrorKind::window_too_small, "empty window");
  int best = 0;
  long best_ecc = -1;
  for (int i = 0; i < static_cast<int>(window.size()); ++i) {
    long ecc = 0;
    for (int d : window.bfs_from(i)) ecc = std::max<long>(ecc, d < 0 ? static_cast<long>(window.size()) : d);
    if (best_ecc < 0 || ecc < best_ecc) {
      best = i;
      best_ecc = ecc;
    }
  }
  return window.vertex(best);
}

// ---------------------------------------------------------------- FiberPotential

FiberPotential::FiberPotential(const Form& form, const Interaction& phi, ConsvBasis basis, WindowPtr region,
                               std::size_t budget)
    : phi_(phi), basis_(std::move(basis)), region_(std::move(region)), budget_(budget) {
  edge_fns_.reserve(region_->edges().size());
  for (const auto& ed : region_->edges()) {
    const auto* fn = form.find(region_->vertex(ed.o), region_->vertex(ed.t));
    if (!fn) throw Error(ErrorKind::support_leaves_window, "potential region has an edge outside the form's window");
    edge_fns_.push_back(*fn);
  }
  bound_.reserve(edge_fns_.size());
  for (const auto& fn : edge_fns_) bound_.emplace_back(fn, *region_);
}

std::string FiberPotential::dense(const Configuration& eta) const {
  std::string s(region_->size(), static_cast<char>(phi_.base()));
  for (const auto& [x, st] : eta.sites()) {
    const auto i = region_->index_of(x);
    if (!i) throw Error(ErrorKind::support_leaves_window, vertex_string(x) + " is outside the potential region");
    s[static_cast<std::size_t>(*i)] = static_cast<char>(st);
  }
  return s;
}

FiberPotential::Fiber FiberPotential::explore(const std::string& pin) const {
  Fiber values{{pin, Rational(0)}};
  std::deque<std::string> queue{pin};
  const auto& edges = region_->edges();
  while (!queue.empty()) {
    const std::string cur = std::move(queue.front());
    queue.pop_front();
    const Rational base_value = values.at(cur);
    const std::span<const State> states(reinterpret_cast<const State*>(cur.data()), cur.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto o = static_cast<std::size_t>(edges[e].o), t = static_cast<std::size_t>(edges[e].t);
      const auto [a, b] = phi_.apply(states[o], states[t]);
      if (a == states[o] && b == states[t]) continue;
      std::string next = cur;
      next[o] = static_cast<char>(a);
      next[t] = static_cast<char>(b);
      Rational value = base_value + bound_[e](states);
      auto [it, inserted] = values.emplace(std::move(next), value);
      if (!inserted) {
        if (it->second != value)
          throw Error(ErrorKind::not_closed, "two paths inside the potential region integrate differently");
        continue;
      }
      if (values.size() > budget_) throw Error(ErrorKind::budget_exceeded, "fiber exploration exceeded the budget");
      queue.push_back(it->first);
    }
  }
  return values;
}

Rational FiberPotential::operator()(const Configuration& eta) {
  const auto q = quantity_of(eta, basis_);
  const std::string key = dense(eta);
  auto it = fibers_.find(q);
  if (it == fibers_.end()) {
    const bool zero = std::all_of(q.begin(), q.end(), [](const Rational& r) { return r == 0; });
    it = fibers_.emplace(q, explore(zero ? dense(Configuration(phi_.base())) : key)).first;
  }
  const auto v = it->second.find(key);
  if (v == it->second.end())
    throw Error(ErrorKind::no_path, "configuration is not connected to its fiber's pin inside the region");
  return v->second;
}

// ---------------------------------------------------------------- cocycle extraction

CocycleResult extract_cocycle(const Form& form, const Interaction& phi, const ConsvBasis& basis,
                              const GroupAction& action) {
  const auto& w = form.window();
  const int c = basis.dim();
  const int d = action.rank();
  const int n = phi.num_states();
  CocycleResult out;
  out.a = Cocycle::Zero(c, d);
  out.center = window_center(w);
  if (c == 0 || d == 0) return out;
  const Vertex& center = out.center;
  const long reach = max_displacement(action, w.locale(), center);

  const auto integral = [&](const Configuration& from, const Configuration& to) -> std::optional<Rational> {
    for (long extra : {2L, 4L}) {
      const auto region = sub_window(w, center, reach + extra);
      if (auto path = find_path(from, to, phi, *region)) return integrate_along(form, *path);
    }
    return std::nullopt;
  };
  const auto shifted = [&](const GroupElement& ginv, const Vertex& x) {
    Vertex y = action.apply(ginv, x);
    if (!w.contains(y)) throw Error(ErrorKind::window_too_small, "shifted probe site leaves the window");
    return y;
  };

  std::vector<int> states;
  for (int s = 0; s < n; ++s)
    if (s != phi.base()) states.push_back(s);
  MatrixQ values(static_cast<Eigen::Index>(states.size()), c);
  for (std::size_t k = 0; k < states.size(); ++k)
    for (int i = 0; i < c; ++i) values(static_cast<Eigen::Index>(k), i) = basis.value(i, states[k]);

  for (int j = 0; j < d; ++j) {
    const auto ginv = action.inverse(action.generator(j));
    const Vertex back = shifted(ginv, center);
    VectorQ rhs(static_cast<Eigen::Index>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k) {
      Configuration to(phi.base()), from(phi.base());
      to.set(center, states[k]);
      from.set(back, states[k]);
      const auto v = integral(from, to);
      if (!v) throw Error(ErrorKind::no_path, "one-site configuration cannot be moved by a generator inside the window");
      rhs(static_cast<Eigen::Index>(k)) = *v;
    }
    const auto sol = solve_affine(values, rhs);
    if (!sol.feasible)
      throw Error(ErrorKind::inconsistent_cocycle, "one-site differences are not a conserved quantity");
    out.a.col(j) = sol.solution;
  }

  // Cross-check on two-site configurations.
  std::optional<Vertex> partner;
  for (const auto& y : w.locale().neighbors(center))
    if (w.contains(y)) {
      partner = y;
      break;
    }
  if (!partner) return out;
  for (int j = 0; j < d; ++j) {
    const auto ginv = action.inverse(action.generator(j));
    const Vertex back_c = shifted(ginv, center), back_p = shifted(ginv, *partner);
    std::vector<int> unit(static_cast<std::size_t>(d), 0);
    unit[static_cast<std::size_t>(j)] = 1;
    const auto rho = cocycle_value(out.a, basis, unit, n);
    for (int s : states)
      for (int s2 : states) {
        Configuration to(phi.base()), from(phi.base());
        to.set(center, s);
        to.set(*partner, s2);
        from.set(back_c, s);
        from.set(back_p, s2);
        const auto v = integral(from, to);
        if (!v) {
          ++out.cross_checks_skipped;
          continue;
        }
        ++out.cross_checks;
        if (*v != rho[static_cast<std::size_t>(s)] + rho[static_cast<std::size_t>(s2)])
          throw Error(ErrorKind::inconsistent_cocycle, "two-site cross-check disagrees with the recovered cocycle");
      }
  }
  return out;
}

// ---------------------------------------------------------------- decomposition

namespace {

/// Nonempty vertex sets of diameter <= max_diam among `candidates` that meet `anchor`.
std::vector<std::vector<Vertex>> sets_meeting(const Locale& locale, const std::vector<Vertex>& candidates,
                                              const std::vector<Vertex>& anchor, long max_diam) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> current;
  const std::set<Vertex> anchors(anchor.begin(), anchor.end());
  std::function<void(std::size_t)> grow = [&](std::size_t next) {
    if (!current.empty() &&
        std::any_of(current.begin(), current.end(), [&](const Vertex& x) { return anchors.count(x) != 0; }))
      out.push_back(current);
    for (std::size_t i = next; i < candidates.size(); ++i) {
      const auto& x = candidates[i];
      if (std::any_of(current.begin(), current.end(), [&](const Vertex& y) { return distance(locale, x, y) > max_diam; }))
        continue;
      current.push_back(x);
      grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
  return out;
}

struct Attempt {
  std::vector<LocalFunction> terms;
  PairingTable table;
  SplittingResult splitting;
};

Attempt decompose_with_diameter(const Form& reduced, const Interaction& phi, const ConsvBasis& basis,
                                const GroupAction& action, const std::vector<Vertex>& domain, const Vertex& center,
                                long radius, long diam) {
  const auto& w = reduced.window();
  const auto& locale = w.locale();
  const int n = phi.num_states();
  const auto coord = orbit_coordinate(action, domain, center);
  if (!coord) throw Error(ErrorKind::not_a_tiling, "window center is not covered by the fundamental domain");
  const GroupElement& to_center = coord->first;
  std::vector<Vertex> anchor;
  for (const auto& x : domain) anchor.push_back(action.apply(to_center, x));
  std::sort(anchor.begin(), anchor.end());
  const long domain_diam = diameter(locale, domain);

  std::vector<Vertex> candidates;
  for (auto& x : ball_vertices(locale, center, diam + domain_diam))
    if (w.contains(x)) candidates.push_back(std::move(x));
  std::sort(candidates.begin(), candidates.end());
  const auto sets = sets_meeting(locale, candidates, anchor, diam);
  std::size_t max_size = 1;
  for (const auto& s : sets) max_size = std::max(max_size, s.size());

  // Probe: a ball holding max_size - 1 sites and one site beyond the form radius.
  long r = 0;
  std::vector<Vertex> probe_ball;
  while (true) {
    probe_ball.clear();
    for (auto& x : ball_vertices(locale, center, r))
      if (w.contains(x)) probe_ball.push_back(std::move(x));
    if (probe_ball.size() + 1 >= max_size) break;
    if (++r > static_cast<long>(w.size())) throw Error(ErrorKind::window_too_small, "window cannot hold the pairing probe");
  }
  std::sort(probe_ball.begin(), probe_ball.end());
  std::optional<Vertex> far;
  for (auto& x : ball_vertices(locale, center, r + radius + 1)) {
    if (!w.contains(x) || distance(locale, center, x) != r + radius + 1) continue;
    if (set_distance(locale, probe_ball, std::vector<Vertex>{x}) <= radius) continue;
    const auto px = locale.line_position(x);
    const bool better = !far || (px ? *px > *locale.line_position(*far) : *far < x);
    if (better) far = x;
  }
  if (!far) throw Error(ErrorKind::window_too_small, "no probe site beyond the form radius inside the window");

  const auto region = sub_window(w, center, std::max(r + radius + 1, diam + domain_diam) + 1);
  auto potential = std::make_shared<FiberPotential>(reduced, phi, basis, region);
  const ConfigFunction v = [potential](const Configuration& eta) { return (*potential)(eta); };

  Attempt out;
  out.table = compute_pairing(v, w, phi, basis, radius, {ProbePair{probe_ball, {*far}}});
  out.splitting = solve_splitting(out.table);
  if (!out.splitting.feasible)
    throw Error(ErrorKind::splitting_infeasible, "the pairing of the reduced potential admits no splitting");

  std::map<Configuration, Rational> cache;
  const auto g = [&](const Configuration& eta) -> const Rational& {
    auto it = cache.find(eta);
    if (it != cache.end()) return it->second;
    const auto q = quantity_of(eta, basis);
    const auto h = out.splitting.h.find(q);
    if (h == out.splitting.h.end())
      throw Error(ErrorKind::window_too_small, "configuration quantity lies outside the splitting domain");
    return cache.emplace(eta, v(eta) + h->second).first->second;
  };

  const auto back = action.inverse(to_center);
  for (const auto& lambda : sets) {
    const std::size_t L = lambda.size();
    const auto term = LocalFunction::tabulate(lambda, n, phi.base(), [&](std::span<const int> s) {
      Rational total(0);
      for (std::uint32_t m = 0; m < (std::uint32_t{1} << L); ++m) {
        Configuration eta(phi.base());
        for (std::size_t i = 0; i < L; ++i)
          if (m & (std::uint32_t{1} << i)) eta.set(lambda[i], s[i]);
        const bool odd = (L - static_cast<std::size_t>(std::popcount(m))) % 2 != 0;
        if (odd)
          total -= g(eta);
        else
          total += g(eta);
      }
      return total;
    });
    if (term.is_zero()) continue;
    const auto classes = transporters(action, lambda, anchor).size();
    out.terms.push_back(act_on_function(action, back, Rational(1, static_cast<long>(classes)) * term));
  }
  return out;
}

}  // namespace

DecompositionResult varadhan_decompose(const Form& form, const Interaction& phi, const ConsvBasis& basis,
                                       const GroupAction& action, const std::vector<Vertex>& domain) {
  if (domain.empty()) throw Error(ErrorKind::invalid_input, "empty fundamental domain");
  DecompositionResult out;
  out.form_radius = std::max(form.radius(), effective_radius(form));
  Form input = form;
  input.set_radius(out.form_radius);
  out.margin = interior_margin(input, action, domain);
  const auto inv = is_shift_invariant(input, action, out.margin);
  if (!inv.invariant)
    throw Error(ErrorKind::not_invariant, "form changes under generator " + std::to_string(inv.generator) + " at edge " +
                                              vertex_string(inv.witness_edge->first) + "->" +
                                              vertex_string(inv.witness_edge->second));
  const auto cocycle = extract_cocycle(input, phi, basis, action);
  out.a = cocycle.a;
  out.center = cocycle.center;
  const auto& window = input.window_ptr();
  const Form omega_rho = build_omega_rho(out.a, action, domain, window, basis, phi);
  Form reduced = input;
  reduced -= omega_rho;

  const auto inner_list = interior(*window, out.margin);
  const std::set<Vertex> inner(inner_list.begin(), inner_list.end());
  Rational residual(0);
  for (long diam : {out.form_radius, out.form_radius + 1}) {
    auto attempt = decompose_with_diameter(reduced, phi, basis, action, domain, out.center, out.form_radius, diam);
    residual = 0;
    std::size_t checked = 0;
    for (int e = 0; e < static_cast<int>(window->edges().size()); ++e) {
      const auto& ed = window->edges()[static_cast<std::size_t>(e)];
      const Vertex& o = window->vertex(ed.o);
      const Vertex& t = window->vertex(ed.t);
      if (!inner.count(o) || !inner.count(t)) continue;
      ++checked;
      const auto sum = orbit_sum_near_edge(attempt.terms, action, o, t, phi.num_states(), phi.base());
      const auto diff = gradient(sum, o, t, phi) + omega_rho.at(e) - input.at(e);
      residual = std::max(residual, max_abs(diff));
    }
    if (checked == 0) throw Error(ErrorKind::window_too_small, "no edges inside the verification margin");
    out.edges_checked = checked;
    out.averaging_diameter = diam;
    out.residual = residual;
    out.terms = std::move(attempt.terms);
    out.table = std::move(attempt.table);
    out.splitting = std::move(attempt.splitting);
    if (residual == 0) return out;
  }
  throw Error(ErrorKind::decomposition_residual,
              "identity fails on the interior with residual " + to_string(residual));
}

// ---------------------------------------------------------------- counterexample

CounterexampleReport counterexample_z_multispecies(long half_width) {
  if (half_width < 3) throw Error(ErrorKind::invalid_input, "half width must be at least 3");
  CounterexampleReport report;
  report.half_width = half_width;
  const auto locale = make_euclidean(1);
  const auto window = std::make_shared<const Window>(
      box(locale, {static_cast<int>(-half_width)}, {static_cast<int>(half_width)}));
  const auto phi = catalog_interaction("multispecies:2");
  MatrixQ rows = MatrixQ::Zero(2, 3);
  rows(0, 1) = 1;
  rows(1, 2) = 1;
  if (!is_conserved_basis(phi, rows)) throw Error(ErrorKind::invalid_input, "species counts are not conserved");
  const ConsvBasis basis{rows};

  Form omega(window, 3, 0, 0);
  for (int e = 0; e < static_cast<int>(window->edges().size()); ++e) {
    const auto& ed = window->edges()[static_cast<std::size_t>(e)];
    const Vertex& o = window->vertex(ed.o);
    const Vertex& t = window->vertex(ed.t);
    const int sign = t[0] > o[0] ? 1 : -1;
    const bool o_first = o < t;
    omega.at(e) = LocalFunction::tabulate(o_first ? std::vector<Vertex>{o, t} : std::vector<Vertex>{t, o}, 3, 0,
                                          [&](std::span<const int> s) {
                                            const int so = s[o_first ? 0 : 1], st = s[o_first ? 1 : 0];
                                            const int v = (so == 2 && st == 1) - (so == 1 && st == 2);
                                            return Rational(sign * v);
                                          });
  }
  report.closed = is_closed(omega, phi).closed;

  // f counts pairs x < y with a 1 at x and a 2 at y.
  const ConfigFunction f = [](const Configuration& eta) {
    long ones = 0, pairs = 0;
    for (const auto& [x, s] : eta.sites()) {
      if (s == 1) ++ones;
      if (s == 2) pairs += ones;
    }
    return Rational(pairs);
  };
  const auto f_local = LocalFunction::tabulate(window->vertices(), 3, 0, [&](std::span<const int> s) {
    long ones = 0, pairs = 0;
    for (int st : s) {
      if (st == 1) ++ones;
      if (st == 2) pairs += ones;
    }
    return Rational(pairs);
  });
  const Form df = differential(f_local, window, phi);
  report.potential_matches = true;
  for (int e = 0; e < static_cast<int>(window->edges().size()); ++e)
    report.potential_matches = report.potential_matches && df.at(e).equals(omega.at(e));

  const ProbePlan plan = default_probe_plan(*window, 1, 1);
  report.table = compute_pairing(f, *window, phi, basis, 1, plan);
  report.formula_matches = true;
  for (const auto& [key, cell] : report.table.cells)
    report.formula_matches = report.formula_matches && cell.value == key.first[0] * key.second[1];
  const Quantity e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
  if (const auto* v = report.table.find(e1, e2)) report.h_left_right = *v;
  if (const auto* v = report.table.find(e2, e1)) report.h_right_left = *v;
  ProbePlan swapped;
  for (const auto& p : plan) swapped.push_back({p.second, p.first, "right-left"});
  const auto swapped_table = compute_pairing(f, *window, phi, basis, 1, swapped);
  if (const auto* v = swapped_table.find(e1, e2)) report.swapped_value = *v;
  const auto laws = check_cocycle_and_symmetry(report.table);
  report.cocycle = laws.cocycle;
  report.asymmetric = !laws.symmetric;
  report.splitting = solve_splitting(report.table);
  report.splitting_infeasible = !report.splitting.feasible;
  return report;
}

}  // namespace ucoh
