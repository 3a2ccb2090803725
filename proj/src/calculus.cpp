#include "ucoh/calculus.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>

namespace ucoh {

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 24;

std::size_t table_size(int num_states, std::size_t sites) {
  std::size_t size = 1;
  for (std::size_t i = 0; i < sites; ++i) {
    size *= static_cast<std::size_t>(num_states);
    if (size > kMaxTable) throw Error(ErrorKind::budget_exceeded, "local function table exceeds 2^24 entries");
  }
  return size;
}

/// Increments a mixed-radix counter (last digit fastest); false on wrap-around.
bool next_states(std::vector<int>& s, int n) {
  for (std::size_t p = s.size(); p > 0; --p) {
    if (++s[p - 1] < n) return true;
    s[p - 1] = 0;
  }
  return false;
}

/// Positions of `inner` vertices inside `outer` (-1 if absent).
std::vector<int> positions_in(const std::vector<Vertex>& inner, const std::vector<Vertex>& outer) {
  std::vector<int> pos;
  pos.reserve(inner.size());
  for (const auto& v : inner) {
    const auto it = std::lower_bound(outer.begin(), outer.end(), v);
    pos.push_back(it != outer.end() && *it == v ? static_cast<int>(it - outer.begin()) : -1);
  }
  return pos;
}

/// Evaluates f on state vectors over a vertex list `over`.
struct Evaluator {
  const LocalFunction* f;
  std::vector<int> pos;
  Evaluator(const LocalFunction& fn, const std::vector<Vertex>& over) : f(&fn), pos(positions_in(fn.support(), over)) {}
  std::size_t index(std::span<const int> states) const {
    std::size_t idx = 0;
    for (int p : pos) idx = idx * static_cast<std::size_t>(f->num_states()) +
                            static_cast<std::size_t>(p < 0 ? f->base() : states[static_cast<std::size_t>(p)]);
    return idx;
  }
  const Rational& operator()(std::span<const int> states) const { return f->table()[index(states)]; }
};

}  // namespace

std::vector<Vertex> support_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------- LocalFunction

LocalFunction::LocalFunction(std::vector<Vertex> support, int num_states, int base, std::vector<Rational> table)
    : support_(std::move(support)), num_states_(num_states), base_(base), table_(std::move(table)) {
  if (!std::is_sorted(support_.begin(), support_.end()) ||
      std::adjacent_find(support_.begin(), support_.end()) != support_.end())
    throw Error(ErrorKind::invalid_input, "local function support must be sorted and duplicate-free");
  if (num_states_ < 1 || base_ < 0 || base_ >= num_states_)
    throw Error(ErrorKind::invalid_input, "bad state count or base for local function");
  if (table_.size() != table_size(num_states_, support_.size()))
    throw Error(ErrorKind::invalid_input, "local function table has wrong length");
}

LocalFunction LocalFunction::constant(const Rational& c, int num_states, int base) {
  return LocalFunction({}, num_states, base, {c});
}

LocalFunction LocalFunction::tabulate(std::vector<Vertex> support, int num_states, int base,
                                      const std::function<Rational(std::span<const int>)>& fn) {
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  const auto size = table_size(num_states, support.size());
  std::vector<Rational> table(size);
  std::vector<int> s(support.size(), 0);
  for (std::size_t i = 0; i < size; ++i) {
    table[i] = fn(s);
    next_states(s, num_states);
  }
  return LocalFunction(std::move(support), num_states, base, std::move(table));
}

std::size_t LocalFunction::index(std::span<const int> states) const {
  std::size_t idx = 0;
  for (int s : states) idx = idx * static_cast<std::size_t>(num_states_) + static_cast<std::size_t>(s);
  return idx;
}

std::vector<int> LocalFunction::states_at(std::size_t index) const {
  std::vector<int> s(support_.size());
  for (std::size_t p = s.size(); p > 0; --p) {
    s[p - 1] = static_cast<int>(index % static_cast<std::size_t>(num_states_));
    index /= static_cast<std::size_t>(num_states_);
  }
  return s;
}

Rational LocalFunction::operator()(const Configuration& eta) const {
  std::size_t idx = 0;
  for (const auto& v : support_) idx = idx * static_cast<std::size_t>(num_states_) + static_cast<std::size_t>(eta.at(v));
  return table_[idx];
}

LocalFunction LocalFunction::extended(const std::vector<Vertex>& superset) const {
  const Evaluator ev(*this, superset);
  for (int p : ev.pos)
    if (p < 0) throw Error(ErrorKind::invalid_input, "extension target does not contain the support");
  return tabulate(superset, num_states_, base_, [&](std::span<const int> s) { return ev(s); });
}

LocalFunction LocalFunction::restricted(const std::vector<Vertex>& lambda) const {
  std::vector<Vertex> target = lambda;
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
  const Evaluator ev(*this, target);
  return tabulate(target, num_states_, base_, [&](std::span<const int> s) { return ev(s); });
}

std::vector<Vertex> LocalFunction::essential_support() const {
  std::vector<Vertex> out;
  const std::size_t n = static_cast<std::size_t>(num_states_);
  std::size_t stride = 1;
  std::vector<std::size_t> strides(support_.size());
  for (std::size_t p = support_.size(); p > 0; --p) {
    strides[p - 1] = stride;
    stride *= n;
  }
  for (std::size_t p = 0; p < support_.size(); ++p) {
    bool depends = false;
    for (std::size_t idx = 0; idx < table_.size() && !depends; ++idx) {
      const std::size_t digit = (idx / strides[p]) % n;
      if (digit != 0) continue;
      for (std::size_t s = 1; s < n && !depends; ++s)
        if (table_[idx + s * strides[p]] != table_[idx]) depends = true;
    }
    if (depends) out.push_back(support_[p]);
  }
  return out;
}

LocalFunction LocalFunction::relabeled(const std::function<Vertex(const Vertex&)>& map) const {
  std::vector<Vertex> images;
  for (const auto& v : support_) images.push_back(map(v));
  std::vector<Vertex> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::invalid_input, "relabeling is not injective on the support");
  // Position of old coordinate p in the new ordering.
  const auto pos = positions_in(images, sorted);
  std::vector<int> old_states(support_.size());
  return tabulate(sorted, num_states_, base_, [&](std::span<const int> s) {
    for (std::size_t p = 0; p < pos.size(); ++p) old_states[p] = s[static_cast<std::size_t>(pos[p])];
    return table_[index(old_states)];
  });
}

bool LocalFunction::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const Rational& q) { return q == 0; });
}

bool LocalFunction::equals(const LocalFunction& other) const {
  const auto u = support_union(support_, other.support_);
  const Evaluator a(*this, u), b(other, u);
  std::vector<int> s(u.size(), 0);
  const auto size = table_size(num_states_, u.size());
  for (std::size_t i = 0; i < size; ++i) {
    if (a(s) != b(s)) return false;
    next_states(s, num_states_);
  }
  return true;
}

bool LocalFunction::has_exact_support() const {
  for (std::size_t idx = 0; idx < table_.size(); ++idx) {
    if (table_[idx] == 0) continue;
    const auto s = states_at(idx);
    if (std::find(s.begin(), s.end(), base_) != s.end()) return false;
  }
  return true;
}

LocalFunction& LocalFunction::operator+=(const LocalFunction& other) {
  const auto u = support_union(support_, other.support_);
  const Evaluator a(*this, u), b(other, u);
  *this = tabulate(u, num_states_, base_, [&](std::span<const int> s) { return a(s) + b(s); });
  return *this;
}

LocalFunction& LocalFunction::operator-=(const LocalFunction& other) {
  const auto u = support_union(support_, other.support_);
  const Evaluator a(*this, u), b(other, u);
  *this = tabulate(u, num_states_, base_, [&](std::span<const int> s) { return a(s) - b(s); });
  return *this;
}

LocalFunction& LocalFunction::operator*=(const Rational& c) {
  for (auto& q : table_) q *= c;
  return *this;
}

LocalFunction operator+(LocalFunction a, const LocalFunction& b) { return a += b; }
LocalFunction operator-(LocalFunction a, const LocalFunction& b) { return a -= b; }
LocalFunction operator*(const Rational& c, LocalFunction f) { return f *= c; }

BoundFunction::BoundFunction(const LocalFunction& f, const Window& window) : f_(&f) {
  for (const auto& v : f.support()) positions_.push_back(window.index_of(v).value_or(-1));
}

Rational BoundFunction::operator()(std::span<const State> states) const {
  std::size_t idx = 0;
  const auto n = static_cast<std::size_t>(f_->num_states());
  for (int p : positions_)
    idx = idx * n + static_cast<std::size_t>(p < 0 ? f_->base() : states[static_cast<std::size_t>(p)]);
  return f_->table()[idx];
}

// ---------------------------------------------------------------- expansion

std::vector<Vertex> ExactSupportExpansion::subset(std::uint32_t mask) const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (mask & (std::uint32_t{1} << i)) out.push_back(domain[i]);
  return out;
}

LocalFunction ExactSupportExpansion::reconstruct() const {
  if (terms.empty()) throw Error(ErrorKind::invalid_input, "empty expansion");
  const auto& any = terms.begin()->second;
  std::vector<Rational> acc(table_size(any.num_states(), domain.size()), Rational(0));
  for (const auto& [mask, term] : terms) {
    if (term.is_zero()) continue;
    const Evaluator ev(term, domain);
    std::vector<int> s(domain.size(), 0);
    for (auto& q : acc) {
      q += ev(s);
      next_states(s, any.num_states());
    }
  }
  return LocalFunction(domain, any.num_states(), any.base(), std::move(acc));
}

ExactSupportExpansion expand(const LocalFunction& f, ExpansionMethod method) {
  ExactSupportExpansion out;
  out.domain = f.support();
  const std::size_t L = out.domain.size();
  if (L > 24) throw Error(ErrorKind::budget_exceeded, "expansion domain too large");
  const std::uint32_t full = (std::uint32_t{1} << L) - 1;
  std::vector<LocalFunction> restrictions(static_cast<std::size_t>(full) + 1);
  for (std::uint32_t m = 0; m <= full; ++m) restrictions[m] = f.restricted(out.subset(m));
  // Masks in increasing numeric order visit every proper submask first.
  for (std::uint32_t m = 0; m <= full; ++m) {
    const auto lambda = out.subset(m);
    LocalFunction term = restrictions[m];
    if (method == ExpansionMethod::recursion) {
      if (m != 0) {
        for (std::uint32_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
          term -= out.terms.at(sub).extended(lambda);
          if (sub == 0) break;
        }
      }
    } else {
      for (std::uint32_t sub = (m - 1) & m; m != 0; sub = (sub - 1) & m) {
        const int sign = std::popcount(m & ~sub) % 2 ? -1 : 1;
        LocalFunction r = restrictions[sub].extended(lambda);
        if (sign < 0)
          term -= r;
        else
          term += r;
        if (sub == 0) break;
      }
    }
    out.terms.emplace(m, std::move(term));
  }
  return out;
}

ExactSupportExpansion expand(const std::function<Rational(const Configuration&)>& f, const std::vector<Vertex>& domain,
                             int num_states, int base, ExpansionMethod method) {
  std::vector<Vertex> d = domain;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  const auto table = LocalFunction::tabulate(d, num_states, base, [&](std::span<const int> s) {
    Configuration eta(base);
    for (std::size_t i = 0; i < d.size(); ++i) eta.set(d[i], s[i]);
    return f(eta);
  });
  return expand(table, method);
}

UniformityCertificate uniformity(const ExactSupportExpansion& expansion, const Locale& locale, long radius) {
  UniformityCertificate c;
  c.radius = radius;
  for (const auto& [mask, term] : expansion.terms) {
    if (term.is_zero()) continue;
    const auto lambda = expansion.subset(mask);
    c.max_diameter = std::max(c.max_diameter, diameter(locale, lambda));
  }
  c.passes = c.max_diameter <= radius;
  c.scope = "exact supports inside a domain of " + std::to_string(expansion.domain.size()) + " sites";
  return c;
}

UniformityCertificate uniformity(const LocalFunction& f, const Locale& locale, long radius) {
  return uniformity(expand(f), locale, radius);
}

// ---------------------------------------------------------------- forms

Form::Form(WindowPtr window, int num_states, int base, long radius)
    : window_(std::move(window)), num_states_(num_states), base_(base), radius_(radius),
      fns_(window_->edges().size(), LocalFunction::zero(num_states, base)) {}

const LocalFunction* Form::find(const Vertex& o, const Vertex& t) const {
  const auto io = window_->index_of(o), it = window_->index_of(t);
  if (!io || !it) return nullptr;
  const auto e = window_->edge_index(*io, *it);
  return e ? &fns_[static_cast<std::size_t>(*e)] : nullptr;
}

Form& Form::operator-=(const Form& other) {
  if (other.fns_.size() != fns_.size()) throw Error(ErrorKind::invalid_input, "forms live on different windows");
  for (std::size_t e = 0; e < fns_.size(); ++e) fns_[e] -= other.fns_[e];
  radius_ = std::max(radius_, other.radius_);
  return *this;
}

Form& Form::operator+=(const Form& other) {
  if (other.fns_.size() != fns_.size()) throw Error(ErrorKind::invalid_input, "forms live on different windows");
  for (std::size_t e = 0; e < fns_.size(); ++e) fns_[e] += other.fns_[e];
  radius_ = std::max(radius_, other.radius_);
  return *this;
}

LocalFunction gradient(const LocalFunction& f, const Vertex& o, const Vertex& t, const Interaction& phi) {
  const auto& supp = f.support();
  if (!std::binary_search(supp.begin(), supp.end(), o) && !std::binary_search(supp.begin(), supp.end(), t))
    return LocalFunction::zero(f.num_states(), f.base());
  auto u = support_union(supp, o < t ? std::vector<Vertex>{o, t} : std::vector<Vertex>{t, o});
  const Evaluator ev(f, u);
  const auto po = static_cast<std::size_t>(positions_in({o}, u)[0]);
  const auto pt = static_cast<std::size_t>(positions_in({t}, u)[0]);
  std::vector<int> moved_states(u.size());
  return LocalFunction::tabulate(u, f.num_states(), f.base(), [&](std::span<const int> s) {
    std::copy(s.begin(), s.end(), moved_states.begin());
    const auto [a, b] = phi.apply(s[po], s[pt]);
    moved_states[po] = a;
    moved_states[pt] = b;
    return ev(moved_states) - ev(s);
  });
}

long effective_radius(const Form& form) {
  long r = 0;
  const auto& w = form.window();
  for (std::size_t e = 0; e < form.num_edges(); ++e) {
    const auto& ed = w.edges()[e];
    for (const auto& v : form.at(static_cast<int>(e)).essential_support()) {
      const long d = std::min(distance(w.locale(), v, w.vertex(ed.o)), distance(w.locale(), v, w.vertex(ed.t)));
      r = std::max(r, d);
    }
  }
  return r;
}

Form differential(const LocalFunction& f, const WindowPtr& window, const Interaction& phi) {
  Form form(window, f.num_states(), f.base(), 0);
  for (std::size_t e = 0; e < window->edges().size(); ++e) {
    const auto& ed = window->edges()[e];
    form.at(static_cast<int>(e)) = gradient(f, window->vertex(ed.o), window->vertex(ed.t), phi);
  }
  form.set_radius(effective_radius(form));
  return form;
}

FormCheck validate_form(const Form& form, const Interaction& phi) {
  FormCheck out;
  const auto& w = form.window();
  const int n = form.num_states();
  for (int e = 0; e < static_cast<int>(form.num_edges()); ++e) {
    const auto& ed = w.edges()[static_cast<std::size_t>(e)];
    const Vertex& o = w.vertex(ed.o);
    const Vertex& t = w.vertex(ed.t);
    // Edges sharing an endpoint with e can have the same effect.
    std::vector<int> nearby;
    for (int v : {ed.o, ed.t})
      for (int e2 : w.out_edges(v)) {
        nearby.push_back(e2);
        nearby.push_back(w.edges()[static_cast<std::size_t>(e2)].reverse);
      }
    std::sort(nearby.begin(), nearby.end());
    nearby.erase(std::unique(nearby.begin(), nearby.end()), nearby.end());
    std::vector<Vertex> u = support_union(form.at(e).support(), form.at(ed.reverse).support());
    u = support_union(u, o < t ? std::vector<Vertex>{o, t} : std::vector<Vertex>{t, o});
    for (int e2 : nearby) {
      const auto& ed2 = w.edges()[static_cast<std::size_t>(e2)];
      const Vertex& o2 = w.vertex(ed2.o);
      const Vertex& t2 = w.vertex(ed2.t);
      u = support_union(u, support_union(form.at(e2).support(), o2 < t2 ? std::vector<Vertex>{o2, t2}
                                                                           : std::vector<Vertex>{t2, o2}));
    }
    const auto pos = [&](const Vertex& v) { return static_cast<std::size_t>(positions_in({v}, u)[0]); };
    const Evaluator fe(form.at(e), u), fr(form.at(ed.reverse), u);
    std::vector<std::pair<Evaluator, std::pair<std::size_t, std::size_t>>> others;
    for (int e2 : nearby) {
      if (e2 == e) continue;
      const auto& ed2 = w.edges()[static_cast<std::size_t>(e2)];
      others.emplace_back(Evaluator(form.at(e2), u), std::make_pair(pos(w.vertex(ed2.o)), pos(w.vertex(ed2.t))));
    }
    const auto po = pos(o), pt = pos(t);
    std::vector<int> s(u.size(), 0), se(u.size()), s2(u.size());
    const auto fail = [&](const std::string& what) {
      out.ok = false;
      out.violation = what;
      out.edge = e;
      Configuration eta(form.base());
      for (std::size_t i = 0; i < u.size(); ++i) eta.set(u[i], s[i]);
      out.eta = eta;
    };
    do {
      se = s;
      const auto [a, b] = phi.apply(s[po], s[pt]);
      se[po] = a;
      se[pt] = b;
      const Rational val = fe(s);
      if (se == s) {
        if (val != 0) return fail("omega_e(eta) != 0 although eta^e = eta"), out;
        continue;
      }
      if (val != -fr(se)) return fail("omega_e(eta) != -omega_ebar(eta^e)"), out;
      for (const auto& [ev2, p2] : others) {
        s2 = s;
        const auto [c, d] = phi.apply(s[p2.first], s[p2.second]);
        s2[p2.first] = c;
        s2[p2.second] = d;
        if (s2 == se && ev2(s) != val) return fail("edges with equal effect disagree"), out;
      }
    } while (next_states(s, n));
  }
  return out;
}

// ---------------------------------------------------------------- closedness and integration

namespace {

struct PotentialRun {
  Potential potential;
  std::optional<PathSeq> witness;
  Rational witness_integral;
  int num_components = 0;
};

PotentialRun run_potential(const Form& form, const Interaction& phi, const GraphOptions& options, bool stop_on_conflict) {
  const TransitionGraph graph(std::make_shared<const ConfigSpace>(form.window_ptr(), phi.num_states(), phi.base(), options), phi);
  const auto& space = graph.space();
  const auto& w = form.window();
  std::vector<BoundFunction> bound;
  for (std::size_t e = 0; e < form.num_edges(); ++e) bound.emplace_back(form.at(static_cast<int>(e)), w);
  const std::size_t N = space.size();
  const int E = static_cast<int>(form.num_edges());
  PotentialRun run;
  run.num_components = graph.num_components();
  run.potential.space = graph.space_ptr();
  run.potential.values.assign(N, Rational(0));
  run.potential.component = graph.components();
  std::vector<char> assigned(N, 0);
  std::vector<std::size_t> parent(N, 0);
  std::vector<int> parent_edge(N, -1);
  const std::size_t base_idx = space.base_index();
  const int base_comp = graph.component(base_idx);
  std::vector<std::size_t> roots;
  std::vector<char> comp_seen(static_cast<std::size_t>(graph.num_components()), 0);
  for (std::size_t i = 0; i < N; ++i) {
    const auto c = static_cast<std::size_t>(graph.component(i));
    if (comp_seen[c]) continue;
    comp_seen[c] = 1;
    roots.push_back(static_cast<int>(c) == base_comp ? base_idx : i);
  }
  auto& values = run.potential.values;
  for (const std::size_t root : roots) {
    assigned[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      const auto src = space.config(i);
      for (int e = 0; e < E; ++e) {
        const auto j = graph.target(i, e);
        if (!j) continue;
        const Rational step = bound[static_cast<std::size_t>(e)](src);
        const Rational expected = values[i] + step;
        if (!assigned[*j]) {
          assigned[*j] = 1;
          values[*j] = expected;
          parent[*j] = i;
          parent_edge[*j] = e;
          queue.push_back(*j);
          continue;
        }
        if (values[*j] == expected || run.witness) continue;
        // Build the cycle root -> i -> j -> root.
        const auto up = [&](std::size_t k) {
          std::vector<std::size_t> chain{k};
          while (chain.back() != root) chain.push_back(parent[chain.back()]);
          return chain;
        };
        PathSeq cycle;
        const auto add = [&](std::size_t a, int edge) {
          const auto& ed = w.edges()[static_cast<std::size_t>(edge)];
          const auto b = graph.target(a, edge);
          cycle.push_back({space.to_configuration(a), w.vertex(ed.o), w.vertex(ed.t), space.to_configuration(*b)});
        };
        auto down = up(i);
        std::reverse(down.begin(), down.end());
        for (std::size_t k = 1; k < down.size(); ++k) add(down[k - 1], parent_edge[down[k]]);
        add(i, e);
        const auto back = up(*j);
        std::vector<int> reverse_edges;
        for (std::size_t k = 0; k + 1 < back.size(); ++k) {
          int rev = -1;
          for (int e2 = 0; e2 < E && rev < 0; ++e2)
            if (graph.target(back[k], e2) == std::optional<std::size_t>(back[k + 1])) rev = e2;
          if (rev < 0) throw Error(ErrorKind::invalid_input, "transition graph is not symmetric");
          add(back[k], rev);
          reverse_edges.push_back(rev);
        }
        Rational integral = integrate_along(form, cycle);
        // A zero total means some tree edge and its reverse do not cancel.
        for (std::size_t k = 0; integral == 0 && k < reverse_edges.size(); ++k) {
          PathSeq longer = std::move(cycle);
          cycle.clear();
          add(back[k + 1], parent_edge[back[k]]);
          add(back[k], reverse_edges[k]);
          integral = integrate_along(form, cycle);
          if (integral == 0) cycle = std::move(longer);
        }
        run.witness = std::move(cycle);
        run.witness_integral = integral;
        if (stop_on_conflict) return run;
      }
    }
  }
  return run;
}

}  // namespace

Rational integrate_along(const Form& form, const PathSeq& path) {
  Rational total(0);
  for (const auto& step : path) {
    const auto* fn = form.find(step.o, step.t);
    if (!fn) throw Error(ErrorKind::invalid_input, "path uses an edge outside the form's window");
    total += (*fn)(step.source);
  }
  return total;
}

ClosedReport is_closed(const Form& form, const Interaction& phi, const GraphOptions& options) {
  auto run = run_potential(form, phi, options, true);
  ClosedReport r;
  r.num_configurations = run.potential.values.size();
  r.num_components = run.num_components;
  if (run.witness) {
    r.closed = false;
    r.witness = std::move(*run.witness);
    r.witness_integral = run.witness_integral;
  }
  return r;
}

Potential integrate(const Form& form, const Interaction& phi, const GraphOptions& options) {
  auto run = run_potential(form, phi, options, true);
  if (run.witness) {
    std::ostringstream os;
    os << "closed path of " << run.witness->size() << " transitions has integral " << to_string(run.witness_integral);
    throw Error(ErrorKind::not_closed, os.str());
  }
  return std::move(run.potential);
}

Rational Potential::operator()(const Configuration& eta) const {
  const auto i = space->find(eta);
  if (!i) throw Error(ErrorKind::support_leaves_window, "configuration is outside the integrated sector");
  return values[*i];
}

std::vector<Rational> tabulate(const ConfigSpace& space, const LocalFunction& f) {
  const BoundFunction b(f, space.window());
  std::vector<Rational> out(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out[i] = b(space.config(i));
  return out;
}

}  // namespace ucoh
