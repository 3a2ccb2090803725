// Locales: locally finite connected symmetric graphs given by coordinate rules.
#pragma once

#include "ucoh/errors.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ucoh {

/// Integer coordinate tuple (lattices) or reduced word over +-1..+-d (free groups).
using Vertex = std::vector<int>;

struct VertexHash {
  std::size_t operator()(const Vertex& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (int c : v) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(c))) * 0x100000001b3ull;
    return h;
  }
};

std::string vertex_string(const Vertex& v);

enum class Transferability { strongly_transferable, transferable, weakly_not_transferable, unknown };
std::string_view transferability_name(Transferability t);

/// Directed edge of a periodic graph: cell site `from` at x to site `to` at x + offset.
struct PeriodicEdge {
  int from = 0;
  int to = 0;
  std::vector<int> offset;
};

/// Structural description of a locale; round-trips through JSON.
struct LocaleSpec {
  std::string kind;  // euclidean, euclidean-n-neighbor, triangular, hexagonal, periodic,
                     // cayley-free-group, product, sublocale, sublocale-of-window
  int d = 0;
  int n = 0;
  int cell = 1;
  std::vector<PeriodicEdge> edges;
  std::vector<LocaleSpec> factors;
  std::vector<LocaleSpec> ambient;  // zero or one entry
  std::string region;               // cross | half-plane-axis
  std::vector<Vertex> vertices;
};

/// Group element: exponent vector for translation actions, reduced word for free groups.
using GroupElement = std::vector<int>;

class GroupAction {
 public:
  enum class Kind { translations, free_group };

  /// Free abelian action; generator j adds displacement[j] to the vertex encoding.
  static GroupAction translations(std::vector<Vertex> displacements);
  /// Left multiplication on reduced words.
  static GroupAction free_group(int rank);

  Kind kind() const noexcept { return kind_; }
  int rank() const noexcept { return rank_; }
  const std::vector<Vertex>& displacements() const noexcept { return displacements_; }

  GroupElement identity() const;
  GroupElement generator(int j) const;
  /// a then b is compose(b, a); compose(a, b)(x) = a(b(x)).
  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;
  Vertex apply(const GroupElement& g, const Vertex& x) const;
  /// The unique g with g(from) = to, if any (actions are free).
  std::optional<GroupElement> transporter(const Vertex& from, const Vertex& to) const;
  /// Image in Z^rank.
  std::vector<int> abelianize(const GroupElement& g) const;

 private:
  Kind kind_ = Kind::translations;
  int rank_ = 0;
  std::vector<Vertex> displacements_;
};

class Locale {
 public:
  virtual ~Locale() = default;

  const LocaleSpec& spec() const noexcept { return spec_; }
  const std::string& kind() const noexcept { return spec_.kind; }

  /// Throws Error(invalid_vertex) when `x` is not a vertex.
  virtual void check_vertex(const Vertex& x) const = 0;
  bool is_vertex(const Vertex& x) const;
  /// Sorted, duplicate-free neighbor list of a valid vertex.
  virtual std::vector<Vertex> neighbors(const Vertex& x) const = 0;
  virtual Vertex origin() const = 0;

  virtual std::optional<long> closed_form_distance(const Vertex&, const Vertex&) const { return {}; }
  virtual std::optional<Transferability> catalog_transferability() const { return {}; }
  virtual std::optional<GroupAction> default_action() const { return {}; }
  virtual bool is_finite() const { return false; }
  /// Fixed number of integers per vertex, if the encoding has one.
  virtual std::optional<std::size_t> encoding_length() const { return {}; }
  /// Position along the line for Z-like locales (periodic, d = 1); used to orient ball pairs.
  virtual std::optional<long> line_position(const Vertex&) const { return {}; }

 protected:
  explicit Locale(LocaleSpec spec) : spec_(std::move(spec)) {}

 private:
  LocaleSpec spec_;
};

using LocalePtr = std::shared_ptr<const Locale>;

LocalePtr make_locale(const LocaleSpec& spec);
LocalePtr make_euclidean(int d);
LocalePtr make_n_neighbor(int d, int n);
LocalePtr make_triangular();
LocalePtr make_hexagonal();
LocalePtr make_periodic(int d, int cell, std::vector<PeriodicEdge> edges);
LocalePtr make_free_group(int rank);
LocalePtr make_product(const std::vector<LocalePtr>& factors);
LocalePtr make_region(const LocalePtr& ambient, const std::string& region);
LocalePtr make_finite_sublocale(const LocalePtr& ambient, std::vector<Vertex> vertices);

/// Graph distance; closed form when available, otherwise breadth-first search.
long distance(const Locale& locale, const Vertex& x, const Vertex& y);
/// Breadth-first distance, ignoring closed forms (used as a test oracle).
long bfs_distance(const Locale& locale, const Vertex& x, const Vertex& y,
                  std::size_t max_visited = 20'000'000);

/// Finite vertex set with its induced directed edges.
class Window {
 public:
  struct Edge {
    int o = 0;
    int t = 0;
    int reverse = 0;  // index of (t, o)
  };

  Window(LocalePtr locale, std::vector<Vertex> vertices);

  const Locale& locale() const noexcept { return *locale_; }
  const LocalePtr& locale_ptr() const noexcept { return locale_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  const Vertex& vertex(int i) const { return vertices_[static_cast<std::size_t>(i)]; }
  std::optional<int> index_of(const Vertex& x) const;
  bool contains(const Vertex& x) const { return index_.count(x) != 0; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::optional<int> edge_index(int o, int t) const;
  /// Edge indices leaving vertex i.
  const std::vector<int>& out_edges(int i) const { return out_[static_cast<std::size_t>(i)]; }
  /// Distance inside the window's induced graph (-1 if disconnected).
  std::vector<int> bfs_from(int i) const;
  /// Shortest vertex path inside the window (empty if none).
  std::vector<int> path(int from, int to) const;

 private:
  LocalePtr locale_;
  std::vector<Vertex> vertices_;
  std::unordered_map<Vertex, int, VertexHash> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
};

using WindowPtr = std::shared_ptr<const Window>;

std::vector<Vertex> ball_vertices(const Locale& locale, const Vertex& center, long radius);
Window ball(const LocalePtr& locale, const Vertex& center, long radius);
Window thicken(const Window& w, long radius);
/// Lattice box lo <= x <= hi on the translated coordinates (all cell sites included).
Window box(const LocalePtr& locale, const Vertex& lo, const Vertex& hi);
/// Vertices of w whose radius-`margin` ball lies inside w.
std::vector<Vertex> interior(const Window& w, long margin);
long diameter(const Locale& locale, std::span<const Vertex> set);
/// d(A, B) = min over pairs.
long set_distance(const Locale& locale, std::span<const Vertex> a, std::span<const Vertex> b);

struct ProbeOptions {
  int r_max = 2;
  int margin = -1;         // default 2 * r_max + 2
  int center_radius = -1;  // default r_max + 1
  std::size_t max_window = 400'000;
};

struct BallProbe {
  Vertex center;
  int radius = 0;
  int boundary_components = 0;
  int finite_components = 0;
  bool stable = true;  // same count with margin + 1
};

struct TransferReport {
  Transferability result = Transferability::unknown;
  std::string source;  // catalog | probe
  std::string reason;
  std::vector<BallProbe> probes;
};

/// Catalog answer for built-in families; bounded probe otherwise (or when forced).
TransferReport classify_transferability(const Locale& locale, const ProbeOptions& options = {},
                                        bool force_probe = false);

struct Tile {
  GroupElement element;
  std::vector<Vertex> vertices;
  bool partial = false;
};

/// Covers window vertices by translates g(domain); throws not-a-tiling on overlap or gaps.
std::vector<Tile> orbit_decompose(const Window& w, const GroupAction& action,
                                  const std::vector<Vertex>& domain);

/// For x, the (element, domain index) with element(domain[index]) = x.
std::optional<std::pair<GroupElement, int>> orbit_coordinate(const GroupAction& action,
                                                             const std::vector<Vertex>& domain,
                                                             const Vertex& x);

}  // namespace ucoh
