#include "ucoh/linalg.hpp"
#include "ucoh/locale.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace ucoh {

std::string vertex_string(const Vertex& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string_view transferability_name(Transferability t) {
  switch (t) {
    case Transferability::strongly_transferable: return "strongly-transferable";
    case Transferability::transferable: return "transferable";
    case Transferability::weakly_not_transferable: return "weakly-transferable-not-transferable";
    case Transferability::unknown: return "unknown";
  }
  return "unknown";
}

bool Locale::is_vertex(const Vertex& x) const {
  try {
    check_vertex(x);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------- group actions

namespace {

Vertex reduce_word(std::vector<int> w) {
  Vertex out;
  out.reserve(w.size());
  for (int letter : w) {
    if (!out.empty() && out.back() == -letter)
      out.pop_back();
    else
      out.push_back(letter);
  }
  return out;
}

Vertex invert_word(const Vertex& w) {
  Vertex out(w.rbegin(), w.rend());
  for (int& c : out) c = -c;
  return out;
}

Vertex concat(const Vertex& a, const Vertex& b) {
  Vertex out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

GroupAction GroupAction::translations(std::vector<Vertex> displacements) {
  GroupAction a;
  a.kind_ = Kind::translations;
  a.rank_ = static_cast<int>(displacements.size());
  a.displacements_ = std::move(displacements);
  return a;
}

GroupAction GroupAction::free_group(int rank) {
  if (rank < 1) throw Error(ErrorKind::invalid_input, "free group rank must be positive");
  GroupAction a;
  a.kind_ = Kind::free_group;
  a.rank_ = rank;
  return a;
}

GroupElement GroupAction::identity() const {
  return kind_ == Kind::translations ? GroupElement(static_cast<std::size_t>(rank_), 0)
                                     : GroupElement{};
}

GroupElement GroupAction::generator(int j) const {
  if (j < 0 || j >= rank_) throw Error(ErrorKind::invalid_input, "generator index out of range");
  if (kind_ == Kind::free_group) return {j + 1};
  GroupElement g = identity();
  g[static_cast<std::size_t>(j)] = 1;
  return g;
}

GroupElement GroupAction::compose(const GroupElement& a, const GroupElement& b) const {
  if (kind_ == Kind::free_group) return reduce_word(concat(a, b));
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

GroupElement GroupAction::inverse(const GroupElement& g) const {
  if (kind_ == Kind::free_group) return invert_word(g);
  GroupElement out = g;
  for (int& c : out) c = -c;
  return out;
}

Vertex GroupAction::apply(const GroupElement& g, const Vertex& x) const {
  if (kind_ == Kind::free_group) return reduce_word(concat(g, x));
  Vertex out = x;
  for (int j = 0; j < rank_; ++j) {
    const int k = g[static_cast<std::size_t>(j)];
    if (k == 0) continue;
    const auto& disp = displacements_[static_cast<std::size_t>(j)];
    for (std::size_t c = 0; c < disp.size() && c < out.size(); ++c) out[c] += k * disp[c];
  }
  return out;
}

std::optional<GroupElement> GroupAction::transporter(const Vertex& from, const Vertex& to) const {
  if (kind_ == Kind::free_group) return reduce_word(concat(to, invert_word(from)));
  if (from.size() != to.size()) return std::nullopt;
  const auto dim = static_cast<Eigen::Index>(from.size());
  MatrixQ a = MatrixQ::Zero(dim, rank_);
  VectorQ b(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    b(c) = to[static_cast<std::size_t>(c)] - from[static_cast<std::size_t>(c)];
    for (int j = 0; j < rank_; ++j) {
      const auto& disp = displacements_[static_cast<std::size_t>(j)];
      a(c, j) = static_cast<std::size_t>(c) < disp.size() ? disp[static_cast<std::size_t>(c)] : 0;
    }
  }
  const auto sol = solve_affine(a, b);
  if (!sol.feasible) return std::nullopt;
  GroupElement g(static_cast<std::size_t>(rank_));
  for (int j = 0; j < rank_; ++j) {
    if (!is_integer(sol.solution(j))) return std::nullopt;
    g[static_cast<std::size_t>(j)] = static_cast<int>(sol.solution(j));
  }
  return g;
}

std::vector<int> GroupAction::abelianize(const GroupElement& g) const {
  if (kind_ == Kind::translations) return g;
  std::vector<int> out(static_cast<std::size_t>(rank_), 0);
  for (int letter : g) out[static_cast<std::size_t>(std::abs(letter) - 1)] += letter > 0 ? 1 : -1;
  return out;
}

// ---------------------------------------------------------------- families

namespace {

long l1(const Vertex& x, const Vertex& y, std::size_t dims) {
  long s = 0;
  for (std::size_t i = 0; i < dims; ++i) s += std::labs(static_cast<long>(x[i]) - y[i]);
  return s;
}

enum class DistanceRule { bfs, l1, n_neighbor };

/// Z^d-periodic graph with `cell` sites per unit cell.
class PeriodicLocale final : public Locale {
 public:
  PeriodicLocale(LocaleSpec spec, DistanceRule rule, std::optional<Transferability> catalog)
      : Locale(std::move(spec)), rule_(rule), catalog_(catalog) {
    const auto& s = this->spec();
    if (s.d < 1) throw Error(ErrorKind::invalid_input, "dimension must be positive");
    if (s.cell < 1) throw Error(ErrorKind::invalid_input, "cell size must be positive");
    for (const auto& e : s.edges) {
      if (e.from < 0 || e.from >= s.cell || e.to < 0 || e.to >= s.cell ||
          e.offset.size() != static_cast<std::size_t>(s.d))
        throw Error(ErrorKind::invalid_input, "malformed periodic edge");
      if (e.from == e.to && std::all_of(e.offset.begin(), e.offset.end(), [](int c) { return c == 0; }))
        throw Error(ErrorKind::invalid_input, "periodic edge is a self-loop");
      moves_.push_back(e);
      PeriodicEdge back{e.to, e.from, e.offset};
      for (int& c : back.offset) c = -c;
      moves_.push_back(back);
    }
  }

  std::size_t len() const { return static_cast<std::size_t>(spec().d + (spec().cell > 1 ? 1 : 0)); }
  int site(const Vertex& x) const { return spec().cell > 1 ? x.back() : 0; }

  void check_vertex(const Vertex& x) const override {
    if (x.size() != len()) throw Error(ErrorKind::invalid_vertex, "expected " + std::to_string(len()) + " coordinates, got " + vertex_string(x));
    if (spec().cell > 1 && (x.back() < 0 || x.back() >= spec().cell))
      throw Error(ErrorKind::invalid_vertex, "cell index out of range in " + vertex_string(x));
  }

  std::vector<Vertex> neighbors(const Vertex& x) const override {
    std::vector<Vertex> out;
    const int s = site(x);
    for (const auto& m : moves_) {
      if (m.from != s) continue;
      Vertex y = x;
      for (int i = 0; i < spec().d; ++i) y[static_cast<std::size_t>(i)] += m.offset[static_cast<std::size_t>(i)];
      if (spec().cell > 1) y.back() = m.to;
      out.push_back(std::move(y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Vertex origin() const override { return Vertex(len(), 0); }

  std::optional<long> closed_form_distance(const Vertex& x, const Vertex& y) const override {
    const auto d = static_cast<std::size_t>(spec().d);
    switch (rule_) {
      case DistanceRule::l1: return l1(x, y, d);
      case DistanceRule::n_neighbor: {
        const long n = spec().n;
        return (l1(x, y, d) + n - 1) / n;
      }
      case DistanceRule::bfs: return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<Transferability> catalog_transferability() const override { return catalog_; }

  std::optional<GroupAction> default_action() const override {
    std::vector<Vertex> disp;
    for (int j = 0; j < spec().d; ++j) {
      Vertex v(len(), 0);
      v[static_cast<std::size_t>(j)] = 1;
      disp.push_back(v);
    }
    return GroupAction::translations(std::move(disp));
  }

  std::optional<std::size_t> encoding_length() const override { return len(); }

  std::optional<long> line_position(const Vertex& x) const override {
    if (spec().d != 1) return std::nullopt;
    return x[0];
  }

 private:
  DistanceRule rule_;
  std::optional<Transferability> catalog_;
  std::vector<PeriodicEdge> moves_;
};

class FreeGroupLocale final : public Locale {
 public:
  explicit FreeGroupLocale(LocaleSpec spec) : Locale(std::move(spec)) {
    if (this->spec().d < 1) throw Error(ErrorKind::invalid_input, "free group rank must be positive");
  }

  void check_vertex(const Vertex& x) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0 || std::abs(x[i]) > spec().d)
        throw Error(ErrorKind::invalid_vertex, "bad letter in word " + vertex_string(x));
      if (i > 0 && x[i] == -x[i - 1])
        throw Error(ErrorKind::invalid_vertex, "word is not reduced: " + vertex_string(x));
    }
  }

  std::vector<Vertex> neighbors(const Vertex& x) const override {
    std::vector<Vertex> out;
    for (int g = 1; g <= spec().d; ++g)
      for (int letter : {g, -g}) out.push_back(reduce_word(concat(x, Vertex{letter})));
    std::sort(out.begin(), out.end());
    return out;
  }

  Vertex origin() const override { return {}; }

  std::optional<long> closed_form_distance(const Vertex& x, const Vertex& y) const override {
    return static_cast<long>(reduce_word(concat(invert_word(x), y)).size());
  }

  std::optional<Transferability> catalog_transferability() const override {
    return spec().d == 1 ? Transferability::weakly_not_transferable : Transferability::transferable;
  }

  std::optional<GroupAction> default_action() const override { return GroupAction::free_group(spec().d); }
};

class ProductLocale final : public Locale {
 public:
  ProductLocale(LocaleSpec spec, std::vector<LocalePtr> factors)
      : Locale(std::move(spec)), factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorKind::invalid_input, "product needs at least one factor");
    for (const auto& f : factors_) {
      const auto len = f->encoding_length();
      if (!len) throw Error(ErrorKind::invalid_input, "product factors need fixed-length vertex encodings");
      offsets_.push_back(total_);
      total_ += *len;
    }
  }

  Vertex part(const Vertex& x, std::size_t i) const {
    const auto b = x.begin() + static_cast<long>(offsets_[i]);
    return Vertex(b, b + static_cast<long>(*factors_[i]->encoding_length()));
  }

  void check_vertex(const Vertex& x) const override {
    if (x.size() != total_) throw Error(ErrorKind::invalid_vertex, "wrong arity for product vertex " + vertex_string(x));
    for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->check_vertex(part(x, i));
  }

  std::vector<Vertex> neighbors(const Vertex& x) const override {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const auto& y : factors_[i]->neighbors(part(x, i))) {
        Vertex z = x;
        std::copy(y.begin(), y.end(), z.begin() + static_cast<long>(offsets_[i]));
        out.push_back(std::move(z));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Vertex origin() const override {
    Vertex out;
    for (const auto& f : factors_) {
      const auto o = f->origin();
      out.insert(out.end(), o.begin(), o.end());
    }
    return out;
  }

  std::optional<long> closed_form_distance(const Vertex& x, const Vertex& y) const override {
    long total = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) total += distance(*factors_[i], part(x, i), part(y, i));
    return total;
  }

  std::optional<Transferability> catalog_transferability() const override {
    if (factors_.size() == 1) return factors_[0]->catalog_transferability();
    for (const auto& f : factors_)
      if (f->is_finite()) return std::nullopt;
    return Transferability::strongly_transferable;
  }

  std::optional<GroupAction> default_action() const override {
    std::vector<Vertex> disp;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const auto a = factors_[i]->default_action();
      if (!a || a->kind() != GroupAction::Kind::translations) return std::nullopt;
      for (const auto& v : a->displacements()) {
        Vertex w(total_, 0);
        std::copy(v.begin(), v.end(), w.begin() + static_cast<long>(offsets_[i]));
        disp.push_back(std::move(w));
      }
    }
    return GroupAction::translations(std::move(disp));
  }

  bool is_finite() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](const auto& f) { return f->is_finite(); });
  }
  std::optional<std::size_t> encoding_length() const override { return total_; }

 private:
  std::vector<LocalePtr> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// Induced subgraph of an ambient locale on a membership predicate.
class RegionLocale final : public Locale {
 public:
  RegionLocale(LocaleSpec spec, LocalePtr ambient, std::function<bool(const Vertex&)> member,
               std::optional<Transferability> catalog, bool finite)
      : Locale(std::move(spec)), ambient_(std::move(ambient)), member_(std::move(member)),
        catalog_(catalog), finite_(finite) {}

  void check_vertex(const Vertex& x) const override {
    ambient_->check_vertex(x);
    if (!member_(x)) throw Error(ErrorKind::invalid_vertex, vertex_string(x) + " is outside the sublocale");
  }

  std::vector<Vertex> neighbors(const Vertex& x) const override {
    std::vector<Vertex> out;
    for (auto& y : ambient_->neighbors(x))
      if (member_(y)) out.push_back(std::move(y));
    return out;
  }

  Vertex origin() const override { return origin_; }
  void set_origin(Vertex o) { origin_ = std::move(o); }

  std::optional<Transferability> catalog_transferability() const override { return catalog_; }
  bool is_finite() const override { return finite_; }
  std::optional<std::size_t> encoding_length() const override { return ambient_->encoding_length(); }

 private:
  LocalePtr ambient_;
  std::function<bool(const Vertex&)> member_;
  std::optional<Transferability> catalog_;
  bool finite_;
  Vertex origin_;
};

bool is_connected_set(const Locale& ambient, const std::vector<Vertex>& set) {
  if (set.empty()) return false;
  std::unordered_set<Vertex, VertexHash> members(set.begin(), set.end());
  std::unordered_set<Vertex, VertexHash> seen{set.front()};
  std::deque<Vertex> queue{set.front()};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (const auto& y : ambient.neighbors(x))
      if (members.count(y) && seen.insert(y).second) queue.push_back(y);
  }
  return seen.size() == members.size();
}

std::optional<Transferability> lattice_catalog(int d) {
  return d == 1 ? Transferability::weakly_not_transferable : Transferability::strongly_transferable;
}

}  // namespace

LocalePtr make_euclidean(int d) {
  LocaleSpec s;
  s.kind = "euclidean";
  s.d = d;
  if (d < 1) throw Error(ErrorKind::invalid_input, "dimension must be positive");
  for (int j = 0; j < d; ++j) {
    PeriodicEdge e;
    e.offset.assign(static_cast<std::size_t>(d), 0);
    e.offset[static_cast<std::size_t>(j)] = 1;
    s.edges.push_back(e);
  }
  return std::make_shared<PeriodicLocale>(s, DistanceRule::l1, lattice_catalog(d));
}

LocalePtr make_n_neighbor(int d, int n) {
  if (d < 1 || n < 1) throw Error(ErrorKind::invalid_input, "dimension and range must be positive");
  LocaleSpec s;
  s.kind = "euclidean-n-neighbor";
  s.d = d;
  s.n = n;
  // All offsets v != 0 with |v|_1 <= n and v lexicographically positive.
  std::vector<int> v(static_cast<std::size_t>(d), -n);
  while (true) {
    long norm = 0;
    for (int c : v) norm += std::abs(c);
    if (norm > 0 && norm <= n && v > std::vector<int>(static_cast<std::size_t>(d), 0)) {
      PeriodicEdge e;
      e.offset = v;
      s.edges.push_back(e);
    }
    std::size_t i = 0;
    while (i < v.size() && v[i] == n) v[i++] = -n;
    if (i == v.size()) break;
    ++v[i];
  }
  return std::make_shared<PeriodicLocale>(s, DistanceRule::n_neighbor, lattice_catalog(d));
}

LocalePtr make_triangular() {
  LocaleSpec s;
  s.kind = "triangular";
  s.d = 2;
  s.edges = {{0, 0, {1, 0}}, {0, 0, {0, 1}}, {0, 0, {1, -1}}};
  return std::make_shared<PeriodicLocale>(s, DistanceRule::bfs, Transferability::strongly_transferable);
}

LocalePtr make_hexagonal() {
  LocaleSpec s;
  s.kind = "hexagonal";
  s.d = 2;
  s.cell = 2;
  s.edges = {{0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}}};
  return std::make_shared<PeriodicLocale>(s, DistanceRule::bfs, Transferability::strongly_transferable);
}

LocalePtr make_periodic(int d, int cell, std::vector<PeriodicEdge> edges) {
  LocaleSpec s;
  s.kind = "periodic";
  s.d = d;
  s.cell = cell;
  s.edges = std::move(edges);
  return std::make_shared<PeriodicLocale>(s, DistanceRule::bfs, std::nullopt);
}

LocalePtr make_free_group(int rank) {
  LocaleSpec s;
  s.kind = "cayley-free-group";
  s.d = rank;
  return std::make_shared<FreeGroupLocale>(s);
}

LocalePtr make_product(const std::vector<LocalePtr>& factors) {
  LocaleSpec s;
  s.kind = "product";
  for (const auto& f : factors) s.factors.push_back(f->spec());
  return std::make_shared<ProductLocale>(s, factors);
}

LocalePtr make_region(const LocalePtr& ambient, const std::string& region) {
  LocaleSpec s;
  s.kind = "sublocale";
  s.ambient = {ambient->spec()};
  s.region = region;
  const auto& a = ambient->spec();
  if (a.kind != "euclidean" || a.d != 2)
    throw Error(ErrorKind::invalid_input, "region sublocales are defined inside Z^2");
  std::function<bool(const Vertex&)> member;
  if (region == "cross")
    member = [](const Vertex& x) { return x[0] == 0 || x[1] == 0; };
  else if (region == "half-plane-axis")
    member = [](const Vertex& x) { return x[0] >= 0 || x[1] == 0; };
  else
    throw Error(ErrorKind::invalid_input, "unknown region '" + region + "'");
  auto loc = std::make_shared<RegionLocale>(s, ambient, member, Transferability::transferable, false);
  loc->set_origin({0, 0});
  return loc;
}

LocalePtr make_finite_sublocale(const LocalePtr& ambient, std::vector<Vertex> vertices) {
  for (const auto& v : vertices) ambient->check_vertex(v);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (!is_connected_set(*ambient, vertices))
    throw Error(ErrorKind::invalid_input, "sublocale vertex set is empty or disconnected");
  LocaleSpec s;
  s.kind = "sublocale-of-window";
  s.ambient = {ambient->spec()};
  s.vertices = vertices;
  auto members = std::make_shared<std::unordered_set<Vertex, VertexHash>>(vertices.begin(), vertices.end());
  auto loc = std::make_shared<RegionLocale>(
      s, ambient, [members](const Vertex& x) { return members->count(x) != 0; }, std::nullopt, true);
  loc->set_origin(vertices.front());
  return loc;
}

LocalePtr make_locale(const LocaleSpec& s) {
  if (s.kind == "euclidean") return make_euclidean(s.d);
  if (s.kind == "euclidean-n-neighbor") return make_n_neighbor(s.d, s.n);
  if (s.kind == "triangular") return make_triangular();
  if (s.kind == "hexagonal") return make_hexagonal();
  if (s.kind == "periodic") return make_periodic(s.d, s.cell, s.edges);
  if (s.kind == "cayley-free-group") return make_free_group(s.d);
  if (s.kind == "product") {
    std::vector<LocalePtr> factors;
    for (const auto& f : s.factors) factors.push_back(make_locale(f));
    return make_product(factors);
  }
  if (s.kind == "sublocale" || s.kind == "sublocale-of-window") {
    if (s.ambient.size() != 1) throw Error(ErrorKind::invalid_input, "sublocale needs one ambient locale");
    auto ambient = make_locale(s.ambient.front());
    if (s.kind == "sublocale") return make_region(ambient, s.region);
    return make_finite_sublocale(ambient, s.vertices);
  }
  throw Error(ErrorKind::invalid_input, "unknown locale kind '" + s.kind + "'");
}

// ---------------------------------------------------------------- metric

long bfs_distance(const Locale& locale, const Vertex& x, const Vertex& y, std::size_t max_visited) {
  locale.check_vertex(x);
  locale.check_vertex(y);
  if (x == y) return 0;
  std::unordered_map<Vertex, long, VertexHash> dist{{x, 0}};
  std::deque<Vertex> queue{x};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    const long dv = dist[v];
    for (auto& w : locale.neighbors(v)) {
      if (dist.count(w)) continue;
      if (w == y) return dv + 1;
      dist.emplace(w, dv + 1);
      queue.push_back(std::move(w));
      if (dist.size() > max_visited) throw Error(ErrorKind::budget_exceeded, "distance search too large");
    }
  }
  throw Error(ErrorKind::invalid_input, "vertices are not connected");
}

long distance(const Locale& locale, const Vertex& x, const Vertex& y) {
  locale.check_vertex(x);
  locale.check_vertex(y);
  if (auto d = locale.closed_form_distance(x, y)) return *d;
  return bfs_distance(locale, x, y);
}

std::vector<Vertex> ball_vertices(const Locale& locale, const Vertex& center, long radius) {
  locale.check_vertex(center);
  std::unordered_map<Vertex, long, VertexHash> dist{{center, 0}};
  std::deque<Vertex> queue{center};
  std::vector<Vertex> out{center};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    const long dv = dist[v];
    if (dv == radius) continue;
    for (auto& w : locale.neighbors(v)) {
      if (dist.emplace(w, dv + 1).second) {
        out.push_back(w);
        queue.push_back(std::move(w));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Window ball(const LocalePtr& locale, const Vertex& center, long radius) {
  return Window(locale, ball_vertices(*locale, center, radius));
}

Window thicken(const Window& w, long radius) {
  std::set<Vertex> all;
  for (const auto& x : w.vertices())
    for (auto& y : ball_vertices(w.locale(), x, radius)) all.insert(std::move(y));
  return Window(w.locale_ptr(), std::vector<Vertex>(all.begin(), all.end()));
}

Window box(const LocalePtr& locale, const Vertex& lo, const Vertex& hi) {
  if (lo.size() != hi.size()) throw Error(ErrorKind::invalid_input, "box corners differ in length");
  const auto len = locale->encoding_length();
  if (!len) throw Error(ErrorKind::invalid_input, "box windows need fixed-length vertex encodings");
  const auto& s = locale->spec();
  // Periodic lattices accept corners on the translated coordinates only; every cell site is included.
  const bool add_sites = s.cell > 1 && lo.size() + 1 == *len;
  if (!add_sites && lo.size() != *len) throw Error(ErrorKind::invalid_input, "box corner has wrong length");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return Window(locale, {});
  Vertex cur = lo;
  while (true) {
    for (int site = 0; site < (add_sites ? s.cell : 1); ++site) {
      Vertex v = cur;
      if (add_sites) v.push_back(site);
      if (locale->is_vertex(v)) out.push_back(std::move(v));
    }
    std::size_t i = cur.size();
    while (i > 0 && cur[i - 1] == hi[i - 1]) {
      cur[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) break;
    ++cur[i - 1];
  }
  return Window(locale, std::move(out));
}

std::vector<Vertex> interior(const Window& w, long margin) {
  std::vector<Vertex> out;
  for (const auto& x : w.vertices()) {
    const auto b = ball_vertices(w.locale(), x, margin);
    if (std::all_of(b.begin(), b.end(), [&](const Vertex& y) { return w.contains(y); })) out.push_back(x);
  }
  return out;
}

long diameter(const Locale& locale, std::span<const Vertex> set) {
  long best = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) best = std::max(best, distance(locale, set[i], set[j]));
  return best;
}

long set_distance(const Locale& locale, std::span<const Vertex> a, std::span<const Vertex> b) {
  long best = -1;
  for (const auto& x : a)
    for (const auto& y : b) {
      const long d = distance(locale, x, y);
      if (best < 0 || d < best) best = d;
    }
  return best;
}

// ---------------------------------------------------------------- windows

Window::Window(LocalePtr locale, std::vector<Vertex> vertices) : locale_(std::move(locale)) {
  for (const auto& v : vertices) locale_->check_vertex(v);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  vertices_ = std::move(vertices);
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], static_cast<int>(i));
  out_.resize(vertices_.size());
  std::unordered_map<long long, int> lookup;
  const auto key = [&](int o, int t) { return static_cast<long long>(o) * static_cast<long long>(vertices_.size() + 1) + t; };
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (const auto& y : locale_->neighbors(vertices_[i])) {
      auto it = index_.find(y);
      if (it == index_.end()) continue;
      const int e = static_cast<int>(edges_.size());
      edges_.push_back({static_cast<int>(i), it->second, -1});
      out_[i].push_back(e);
      lookup.emplace(key(static_cast<int>(i), it->second), e);
    }
  }
  for (auto& e : edges_) {
    auto it = lookup.find(key(e.t, e.o));
    if (it == lookup.end()) throw Error(ErrorKind::invalid_input, "locale adjacency is not symmetric");
    e.reverse = it->second;
  }
}

std::optional<int> Window::index_of(const Vertex& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Window::edge_index(int o, int t) const {
  for (int e : out_[static_cast<std::size_t>(o)])
    if (edges_[static_cast<std::size_t>(e)].t == t) return e;
  return std::nullopt;
}

std::vector<int> Window::bfs_from(int i) const {
  std::vector<int> dist(vertices_.size(), -1);
  std::deque<int> queue{i};
  dist[static_cast<std::size_t>(i)] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : out_[static_cast<std::size_t>(v)]) {
      const int w = edges_[static_cast<std::size_t>(e)].t;
      if (dist[static_cast<std::size_t>(w)] < 0) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<int> Window::path(int from, int to) const {
  const auto dist = bfs_from(to);
  if (dist[static_cast<std::size_t>(from)] < 0) return {};
  std::vector<int> out{from};
  int cur = from;
  while (cur != to) {
    for (int e : out_[static_cast<std::size_t>(cur)]) {
      const int w = edges_[static_cast<std::size_t>(e)].t;
      if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(cur)] - 1) {
        cur = w;
        break;
      }
    }
    out.push_back(cur);
  }
  return out;
}

// ---------------------------------------------------------------- orbits

std::optional<std::pair<GroupElement, int>> orbit_coordinate(const GroupAction& action,
                                                             const std::vector<Vertex>& domain,
                                                             const Vertex& x) {
  std::optional<std::pair<GroupElement, int>> found;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    auto g = action.transporter(domain[k], x);
    if (!g) continue;
    if (action.apply(*g, domain[k]) != x) continue;
    if (found)
      throw Error(ErrorKind::not_a_tiling, vertex_string(x) + " lies in two translates of the domain");
    found = std::make_pair(std::move(*g), static_cast<int>(k));
  }
  return found;
}

std::vector<Tile> orbit_decompose(const Window& w, const GroupAction& action,
                                  const std::vector<Vertex>& domain) {
  if (domain.empty()) throw Error(ErrorKind::not_a_tiling, "empty fundamental domain");
  std::set<Vertex> dom(domain.begin(), domain.end());
  if (dom.size() != domain.size()) throw Error(ErrorKind::not_a_tiling, "fundamental domain has repeated vertices");
  std::map<GroupElement, Tile> tiles;
  for (const auto& x : w.vertices()) {
    auto coord = orbit_coordinate(action, domain, x);
    if (!coord) throw Error(ErrorKind::not_a_tiling, vertex_string(x) + " is not covered by any translate");
    auto& tile = tiles[coord->first];
    tile.element = coord->first;
    tile.vertices.push_back(x);
  }
  std::vector<Tile> out;
  for (auto& [g, tile] : tiles) {
    tile.partial = tile.vertices.size() != domain.size();
    std::sort(tile.vertices.begin(), tile.vertices.end());
    out.push_back(std::move(tile));
  }
  return out;
}

// ---------------------------------------------------------------- transferability

namespace {

struct ComponentCount {
  int boundary = 0;
  int finite = 0;
};

ComponentCount count_components(const Locale& locale, const Vertex& center, int radius, int margin,
                                std::size_t max_window) {
  const auto inner = ball_vertices(locale, center, radius);
  const std::unordered_set<Vertex, VertexHash> in_ball(inner.begin(), inner.end());
  // Breadth-first layers up to radius + margin; the last layer is the window boundary.
  std::unordered_map<Vertex, int, VertexHash> dist{{center, 0}};
  std::deque<Vertex> queue{center};
  const int outer = radius + margin;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    const int dv = dist[v];
    if (dv == outer) continue;
    for (auto& y : locale.neighbors(v)) {
      if (dist.emplace(y, dv + 1).second) {
        if (dist.size() > max_window) throw Error(ErrorKind::budget_exceeded, "probe window too large");
        queue.push_back(std::move(y));
      }
    }
  }
  const auto on_boundary = [&](const Vertex& v) {
    if (dist.at(v) < outer) return false;
    for (const auto& y : locale.neighbors(v))
      if (!dist.count(y)) return true;
    return false;
  };
  ComponentCount out;
  std::unordered_set<Vertex, VertexHash> seen;
  for (const auto& [start, d] : dist) {
    if (in_ball.count(start) || seen.count(start)) continue;
    bool touches = false;
    std::deque<Vertex> q{start};
    seen.insert(start);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      if (!touches && on_boundary(v)) touches = true;
      for (auto& y : locale.neighbors(v))
        if (dist.count(y) && !in_ball.count(y) && seen.insert(y).second) q.push_back(std::move(y));
    }
    ++(touches ? out.boundary : out.finite);
  }
  return out;
}

}  // namespace

TransferReport classify_transferability(const Locale& locale, const ProbeOptions& options, bool force_probe) {
  TransferReport report;
  if (!force_probe) {
    if (auto c = locale.catalog_transferability()) {
      report.result = *c;
      report.source = "catalog";
      report.reason = "built-in family " + locale.kind();
      return report;
    }
  }
  report.source = "probe";
  if (locale.is_finite()) {
    report.reason = "finite graph: complements of large balls are empty";
    return report;
  }
  const int r_max = std::max(1, options.r_max);
  const int margin = options.margin >= 0 ? options.margin : 2 * r_max + 2;
  const int center_radius = options.center_radius >= 0 ? options.center_radius : r_max + 1;
  const auto centers = ball_vertices(locale, locale.origin(), center_radius);
  bool inconclusive = false;
  int max_count = 0;
  std::vector<bool> connected_at(static_cast<std::size_t>(r_max + 1), false);
  for (const auto& c : centers) {
    for (int r = 1; r <= r_max; ++r) {
      const auto a = count_components(locale, c, r, margin, options.max_window);
      const auto b = count_components(locale, c, r, margin + 1, options.max_window);
      BallProbe p{c, r, a.boundary, a.finite, a.boundary == b.boundary && a.finite == b.finite};
      if (a.finite > 0 || !p.stable) inconclusive = true;
      max_count = std::max(max_count, a.boundary);
      if (a.boundary == 1) connected_at[static_cast<std::size_t>(r)] = true;
      report.probes.push_back(std::move(p));
    }
  }
  if (inconclusive) {
    report.reason = "finite or unstable components near a probed ball";
    return report;
  }
  if (max_count == 1) {
    report.result = Transferability::strongly_transferable;
    report.reason = "every probed ball has a connected infinite complement";
  } else if (max_count >= 3) {
    report.result = Transferability::transferable;
    report.reason = "a probed ball complement has three or more components";
  } else if (std::all_of(connected_at.begin() + 1, connected_at.end(), [](bool b) { return b; })) {
    report.result = Transferability::transferable;
    report.reason = "balls of every probed radius with connected complement exist";
  } else {
    report.result = Transferability::weakly_not_transferable;
    report.reason = "complements split into at most two infinite components";
  }
  return report;
}

}  // namespace ucoh
