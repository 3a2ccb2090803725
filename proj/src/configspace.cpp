#include "ucoh/configspace.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace ucoh {

Configuration::Configuration(int base, std::map<Vertex, int> sites) : base_(base) {
  for (auto& [x, s] : sites)
    if (s != base_) sites_.emplace(x, s);
}

int Configuration::at(const Vertex& x) const {
  const auto it = sites_.find(x);
  return it == sites_.end() ? base_ : it->second;
}

void Configuration::set(const Vertex& x, int state) {
  if (state == base_)
    sites_.erase(x);
  else
    sites_[x] = state;
}

std::vector<Vertex> Configuration::support() const {
  std::vector<Vertex> out;
  for (const auto& [x, s] : sites_) out.push_back(x);
  return out;
}

std::string configuration_string(const Configuration& eta, const StateSpace& states) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [x, s] : eta.sites()) {
    os << (first ? "" : ", ") << vertex_string(x) << ':' << states.label(s);
    first = false;
  }
  os << '}';
  return os.str();
}

Configuration apply_edge(const Configuration& eta, const Vertex& o, const Vertex& t, const Interaction& phi) {
  const auto [a, b] = phi.apply(eta.at(o), eta.at(t));
  Configuration out = eta;
  out.set(o, a);
  out.set(t, b);
  return out;
}

Configuration exchanged(const Configuration& eta, const Vertex& x, const Vertex& y) {
  Configuration out = eta;
  const int a = eta.at(x), b = eta.at(y);
  out.set(x, b);
  out.set(y, a);
  return out;
}

Configuration moved(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi) {
  return apply_edge(eta, x, y, phi);
}

Quantity quantity_of(const Configuration& eta, const ConsvBasis& basis, std::optional<std::span<const Vertex>> region) {
  Quantity q = zero_quantity(basis);
  if (!region) {
    for (const auto& [x, s] : eta.sites()) add_quantity(q, quantity_of_state(basis, s));
    return q;
  }
  for (const auto& x : *region) add_quantity(q, quantity_of_state(basis, eta.at(x)));
  return q;
}

// ---------------------------------------------------------------- ConfigSpace

namespace {

std::string key_of(std::span<const State> s) {
  return std::string(reinterpret_cast<const char*>(s.data()), s.size());
}

}  // namespace

ConfigSpace::ConfigSpace(WindowPtr window, int num_states, int base, GraphOptions options)
    : window_(std::move(window)), num_states_(num_states), base_(base), max_support_(options.max_support) {
  const std::size_t n = window_->size();
  full_ = !max_support_ || *max_support_ >= static_cast<int>(n);
  if (full_) {
    long double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= num_states_;
    if (total > static_cast<long double>(options.budget))
      throw Error(ErrorKind::budget_exceeded, "|S|^|window| = " + std::to_string(static_cast<double>(total)) +
                                                  " exceeds budget " + std::to_string(options.budget));
    count_ = static_cast<std::size_t>(total);
    data_.resize(count_ * n);
    std::vector<State> cur(n, 0);
    for (std::size_t i = 0; i < count_; ++i) {
      std::copy(cur.begin(), cur.end(), data_.begin() + static_cast<long>(i * n));
      std::size_t p = n;
      while (p > 0) {
        --p;
        if (++cur[p] < num_states_) break;
        cur[p] = 0;
      }
    }
    max_support_.reset();
    return;
  }
  // Sector: lexicographic enumeration with a bound on non-base sites.
  const int k = *max_support_;
  std::vector<State> cur(n, 0);
  const auto rec = [&](auto&& self, std::size_t p, int nonbase) -> void {
    if (p == n) {
      if (data_.size() / n + 1 > options.budget)
        throw Error(ErrorKind::budget_exceeded, "sector size exceeds budget " + std::to_string(options.budget));
      data_.insert(data_.end(), cur.begin(), cur.end());
      return;
    }
    for (int s = 0; s < num_states_; ++s) {
      const int next = nonbase + (s != base_ ? 1 : 0);
      if (next > k) continue;
      cur[p] = static_cast<State>(s);
      self(self, p + 1, next);
    }
  };
  rec(rec, 0, 0);
  count_ = data_.size() / n;
  lookup_.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) lookup_.emplace(key_of(config(i)), i);
}

std::optional<std::size_t> ConfigSpace::find(std::span<const State> states) const {
  if (full_) {
    std::size_t idx = 0;
    for (State s : states) idx = idx * static_cast<std::size_t>(num_states_) + s;
    return idx;
  }
  const auto it = lookup_.find(key_of(states));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t ConfigSpace::base_index() const {
  return *find(std::vector<State>(sites(), static_cast<State>(base_)));
}

Configuration ConfigSpace::to_configuration(std::size_t i) const {
  Configuration eta(base_);
  const auto c = config(i);
  for (std::size_t p = 0; p < c.size(); ++p)
    if (c[p] != base_) eta.set(window_->vertex(static_cast<int>(p)), c[p]);
  return eta;
}

std::vector<State> ConfigSpace::dense(const Configuration& eta) const {
  std::vector<State> out(sites(), static_cast<State>(base_));
  for (const auto& [x, s] : eta.sites()) {
    const auto i = window_->index_of(x);
    if (!i) throw Error(ErrorKind::support_leaves_window, vertex_string(x) + " is outside the window");
    out[static_cast<std::size_t>(*i)] = static_cast<State>(s);
  }
  return out;
}

std::optional<std::size_t> ConfigSpace::find(const Configuration& eta) const {
  const auto d = dense(eta);
  return find(std::span<const State>(d));
}

// ---------------------------------------------------------------- TransitionGraph

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t root(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

TransitionGraph::TransitionGraph(std::shared_ptr<const ConfigSpace> space, Interaction phi)
    : space_(std::move(space)), phi_(std::move(phi)) {
  if (phi_.num_states() != space_->num_states())
    throw Error(ErrorKind::invalid_input, "interaction and configuration space disagree on |S|");
  const std::size_t n = space_->size();
  UnionFind uf(n);
  const auto& edges = space_->window().edges();
  for (std::size_t i = 0; i < n; ++i)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (auto j = target(i, e)) uf.unite(i, *j);
  component_.assign(n, -1);
  std::vector<int> label(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = uf.root(i);
    if (label[r] < 0) label[r] = num_components_++;
    component_[i] = label[r];
  }
}

bool TransitionGraph::step(std::vector<State>& states, int edge) const {
  const auto& e = space_->window().edges()[static_cast<std::size_t>(edge)];
  State& a = states[static_cast<std::size_t>(e.o)];
  State& b = states[static_cast<std::size_t>(e.t)];
  const auto [c, d] = phi_.apply(a, b);
  if (c == a && d == b) return false;
  a = static_cast<State>(c);
  b = static_cast<State>(d);
  return true;
}

std::optional<std::size_t> TransitionGraph::target(std::size_t i, int edge) const {
  const auto src = space_->config(i);
  const auto& e = space_->window().edges()[static_cast<std::size_t>(edge)];
  const auto [c, d] = phi_.apply(src[static_cast<std::size_t>(e.o)], src[static_cast<std::size_t>(e.t)]);
  if (c == src[static_cast<std::size_t>(e.o)] && d == src[static_cast<std::size_t>(e.t)]) return std::nullopt;
  std::vector<State> dst(src.begin(), src.end());
  dst[static_cast<std::size_t>(e.o)] = static_cast<State>(c);
  dst[static_cast<std::size_t>(e.t)] = static_cast<State>(d);
  return space_->find(std::span<const State>(dst));
}

TransitionGraph build_transition_graph(const WindowPtr& window, const Interaction& phi, const GraphOptions& options) {
  auto space = std::make_shared<const ConfigSpace>(window, phi.num_states(), phi.base(), options);
  return TransitionGraph(space, phi);
}

// ---------------------------------------------------------------- paths

namespace {

void push_edge(PathSeq& path, Configuration& cur, const Vertex& o, const Vertex& t, const Interaction& phi) {
  Configuration next = apply_edge(cur, o, t, phi);
  if (next == cur) return;
  path.push_back({cur, o, t, next});
  cur = std::move(next);
}

void swap_adjacent(PathSeq& path, Configuration& cur, const Vertex& u, const Vertex& v, const Interaction& phi,
                   const ExchangeReport& ex) {
  const int n = phi.num_states();
  const auto& w = ex.at(cur.at(u), cur.at(v), n);
  for (int k = 0; k < w.power; ++k) {
    if (w.reversed)
      push_edge(path, cur, v, u, phi);
    else
      push_edge(path, cur, u, v, phi);
  }
}

std::vector<Vertex> window_path(const Vertex& x, const Vertex& y, const Window& window) {
  const auto ix = window.index_of(x);
  const auto iy = window.index_of(y);
  if (!ix || !iy) throw Error(ErrorKind::no_path, "endpoint outside the window");
  const auto idx = window.path(*ix, *iy);
  if (idx.empty()) throw Error(ErrorKind::no_path, "no path from " + vertex_string(x) + " to " + vertex_string(y));
  std::vector<Vertex> out;
  for (int i : idx) out.push_back(window.vertex(i));
  return out;
}

}  // namespace

PathSeq exchange_path(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi,
                      const Window& window) {
  const auto ex = is_exchangeable(phi);
  if (!ex.exchangeable) throw Error(ErrorKind::not_exchangeable, "interaction " + phi.name() + " is not exchangeable");
  PathSeq path;
  if (x == y) return path;
  const auto vs = window_path(x, y, window);
  Configuration cur = eta;
  const std::size_t n = vs.size() - 1;
  for (std::size_t i = 1; i <= n; ++i) swap_adjacent(path, cur, vs[i - 1], vs[i], phi, ex);
  for (std::size_t i = n - 1; i >= 1; --i) swap_adjacent(path, cur, vs[i - 1], vs[i], phi, ex);
  if (!(cur == exchanged(eta, x, y))) throw Error(ErrorKind::no_path, "exchange sweep did not reach eta^{x,y}");
  return path;
}

PathSeq move_path(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi,
                  const Window& window) {
  if (x == y) throw Error(ErrorKind::invalid_input, "move_path needs distinct vertices");
  const auto vs = window_path(x, y, window);
  const Vertex& last = vs[vs.size() - 2];
  PathSeq path = exchange_path(eta, x, last, phi, window);
  Configuration cur = path.empty() ? eta : path.back().target;
  push_edge(path, cur, last, y, phi);
  auto back = exchange_path(cur, x, last, phi, window);
  path.insert(path.end(), back.begin(), back.end());
  const Configuration end = path.empty() ? eta : path.back().target;
  if (!(end == moved(eta, x, y, phi))) throw Error(ErrorKind::no_path, "move construction did not reach eta^{x->y}");
  return path;
}

std::optional<PathSeq> find_path(const Configuration& from, const Configuration& to, const Interaction& phi,
                                 const Window& window, std::size_t budget) {
  const auto to_dense = [&](const Configuration& eta) {
    std::string s(window.size(), static_cast<char>(phi.base()));
    for (const auto& [x, st] : eta.sites()) {
      const auto i = window.index_of(x);
      if (!i) throw Error(ErrorKind::support_leaves_window, vertex_string(x) + " is outside the window");
      s[static_cast<std::size_t>(*i)] = static_cast<char>(st);
    }
    return s;
  };
  const std::string start = to_dense(from);
  const std::string goal = to_dense(to);
  std::unordered_map<std::string, std::pair<std::string, int>> parent;
  parent.emplace(start, std::make_pair(std::string(), -1));
  std::deque<std::string> queue{start};
  const auto& edges = window.edges();
  bool found = start == goal;
  while (!queue.empty() && !found) {
    const std::string cur = queue.front();
    queue.pop_front();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      const auto& ed = edges[static_cast<std::size_t>(e)];
      const auto a = static_cast<unsigned char>(cur[static_cast<std::size_t>(ed.o)]);
      const auto b = static_cast<unsigned char>(cur[static_cast<std::size_t>(ed.t)]);
      const auto [c, d] = phi.apply(a, b);
      if (c == a && d == b) continue;
      std::string next = cur;
      next[static_cast<std::size_t>(ed.o)] = static_cast<char>(c);
      next[static_cast<std::size_t>(ed.t)] = static_cast<char>(d);
      if (!parent.emplace(next, std::make_pair(cur, e)).second) continue;
      if (parent.size() > budget) throw Error(ErrorKind::budget_exceeded, "path search exceeded budget");
      if (next == goal) {
        found = true;
        break;
      }
      queue.push_back(std::move(next));
    }
  }
  if (!found) return std::nullopt;
  std::vector<int> edge_seq;
  for (std::string cur = goal; cur != start;) {
    const auto& [prev, e] = parent.at(cur);
    edge_seq.push_back(e);
    cur = prev;
  }
  std::reverse(edge_seq.begin(), edge_seq.end());
  PathSeq path;
  Configuration cur = from;
  for (int e : edge_seq) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    push_edge(path, cur, window.vertex(ed.o), window.vertex(ed.t), phi);
  }
  return path;
}

bool is_valid_path(const PathSeq& path, const Interaction& phi) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& s = path[i];
    if (!(apply_edge(s.source, s.o, s.t, phi) == s.target) || s.source == s.target) return false;
    if (i > 0 && !(path[i - 1].target == s.source)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- irreducibility

IrreducibilityReport check_irreducible_quantification(const Interaction& phi, const ConsvBasis& basis,
                                                      const WindowPtr& window, const GraphOptions& options) {
  const auto graph = build_transition_graph(window, phi, options);
  const auto& space = graph.space();
  IrreducibilityReport r;
  r.num_configurations = space.size();
  r.num_components = graph.num_components();
  std::map<Quantity, std::pair<std::size_t, int>, QuantityLess> first_seen;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto eta = space.to_configuration(i);
    const auto q = quantity_of(eta, basis);
    const auto [it, inserted] = first_seen.emplace(q, std::make_pair(i, graph.component(i)));
    if (!inserted && it->second.second != graph.component(i) && r.fibers_connected) {
      r.fibers_connected = false;
      r.witness = std::make_pair(space.to_configuration(it->second.first), eta);
    }
  }
  r.num_quantities = first_seen.size();
  std::ostringstream os;
  os << "consistent up to window of " << window->size() << " sites";
  if (space.max_support()) os << ", support <= " << *space.max_support();
  r.scope = os.str();
  return r;
}

}  // namespace ucoh
