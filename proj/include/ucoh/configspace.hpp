// Configurations, transitions, window transition graphs and path constructions.
#pragma once

#include "ucoh/interaction.hpp"
#include "ucoh/locale.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ucoh {

/// Finite-support configuration: vertex -> state index, base entries never stored.
class Configuration {
 public:
  explicit Configuration(int base = 0) : base_(base) {}
  Configuration(int base, std::map<Vertex, int> sites);

  int base() const noexcept { return base_; }
  int at(const Vertex& x) const;
  void set(const Vertex& x, int state);
  const std::map<Vertex, int>& sites() const noexcept { return sites_; }
  std::size_t support_size() const noexcept { return sites_.size(); }
  std::vector<Vertex> support() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.base_ == b.base_ && a.sites_ == b.sites_;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    return a.sites_ < b.sites_;
  }

 private:
  int base_;
  std::map<Vertex, int> sites_;
};

std::string configuration_string(const Configuration& eta, const StateSpace& states);

/// eta^e for e = (o, t).
Configuration apply_edge(const Configuration& eta, const Vertex& o, const Vertex& t, const Interaction& phi);
/// eta^{x,y}: the x and y components exchanged.
Configuration exchanged(const Configuration& eta, const Vertex& x, const Vertex& y);
/// eta^{x->y}: phi applied to the pair (x, y) regardless of adjacency.
Configuration moved(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi);

/// Totals of each basis function over `region` (all sites if absent).
Quantity quantity_of(const Configuration& eta, const ConsvBasis& basis,
                     std::optional<std::span<const Vertex>> region = std::nullopt);

using State = std::uint8_t;

struct GraphOptions {
  /// Keep only configurations with at most this many non-base sites.
  std::optional<int> max_support;
  std::size_t budget = 2'000'000;
};

/// Configurations supported in a window, stored densely in lexicographic order
/// (window vertex order, then state index).
class ConfigSpace {
 public:
  ConfigSpace(WindowPtr window, int num_states, int base, GraphOptions options = {});

  const Window& window() const noexcept { return *window_; }
  const WindowPtr& window_ptr() const noexcept { return window_; }
  int num_states() const noexcept { return num_states_; }
  int base() const noexcept { return base_; }
  const std::optional<int>& max_support() const noexcept { return max_support_; }
  std::size_t size() const noexcept { return count_; }
  std::size_t sites() const noexcept { return window_->size(); }

  std::span<const State> config(std::size_t i) const {
    return {data_.data() + i * sites(), sites()};
  }
  std::optional<std::size_t> find(std::span<const State> states) const;
  std::size_t base_index() const;

  Configuration to_configuration(std::size_t i) const;
  std::vector<State> dense(const Configuration& eta) const;
  std::optional<std::size_t> find(const Configuration& eta) const;

 private:
  WindowPtr window_;
  int num_states_;
  int base_;
  std::optional<int> max_support_;
  std::size_t count_ = 0;
  std::vector<State> data_;
  bool full_ = true;
  std::unordered_map<std::string, std::size_t> lookup_;
};

/// Transition graph on a ConfigSpace with union-find component labels.
class TransitionGraph {
 public:
  TransitionGraph(std::shared_ptr<const ConfigSpace> space, Interaction phi);

  const ConfigSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const ConfigSpace>& space_ptr() const noexcept { return space_; }
  const Interaction& interaction() const noexcept { return phi_; }
  int num_components() const noexcept { return num_components_; }
  /// Components are numbered by their lexicographically least configuration.
  int component(std::size_t i) const { return component_[i]; }
  const std::vector<int>& components() const noexcept { return component_; }
  /// Index of eta^e for window edge `edge`, or nullopt for self-transitions and sector exits.
  std::optional<std::size_t> target(std::size_t i, int edge) const;
  /// Applies the window edge to a dense state vector in place; false if unchanged.
  bool step(std::vector<State>& states, int edge) const;

 private:
  std::shared_ptr<const ConfigSpace> space_;
  Interaction phi_;
  std::vector<int> component_;
  int num_components_ = 0;
};

TransitionGraph build_transition_graph(const WindowPtr& window, const Interaction& phi,
                                       const GraphOptions& options = {});

struct PathStep {
  Configuration source;
  Vertex o;
  Vertex t;
  Configuration target;
};
using PathSeq = std::vector<PathStep>;

/// Explicit path from eta to eta^{x,y}: forward sweep of swaps along a window path, then back.
PathSeq exchange_path(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi,
                      const Window& window);
/// Explicit path from eta to eta^{x->y}: exchange x with the last path vertex, act, exchange back.
PathSeq move_path(const Configuration& eta, const Vertex& x, const Vertex& y, const Interaction& phi,
                  const Window& window);
/// Breadth-first path between two configurations using window edges only.
std::optional<PathSeq> find_path(const Configuration& from, const Configuration& to, const Interaction& phi,
                                 const Window& window, std::size_t budget = 2'000'000);
/// True if consecutive steps are transitions with matching endpoints.
bool is_valid_path(const PathSeq& path, const Interaction& phi);

struct IrreducibilityReport {
  bool fibers_connected = true;
  std::size_t num_configurations = 0;
  int num_components = 0;
  std::size_t num_quantities = 0;
  std::optional<std::pair<Configuration, Configuration>> witness;
  std::string scope;
};

IrreducibilityReport check_irreducible_quantification(const Interaction& phi, const ConsvBasis& basis,
                                                      const WindowPtr& window,
                                                      const GraphOptions& options = {});

}  // namespace ucoh
