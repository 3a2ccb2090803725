// Local functions, exact-support expansions, forms, closedness and integration.
#pragma once

#include "ucoh/configspace.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ucoh {

/// Rational function of eta restricted to a finite support, as a dense table over
/// S^support indexed lexicographically (first support vertex most significant).
class LocalFunction {
 public:
  LocalFunction() = default;
  LocalFunction(std::vector<Vertex> support, int num_states, int base, std::vector<Rational> table);

  static LocalFunction zero(int num_states, int base) { return constant(Rational(0), num_states, base); }
  static LocalFunction constant(const Rational& c, int num_states, int base);
  static LocalFunction tabulate(std::vector<Vertex> support, int num_states, int base,
                                const std::function<Rational(std::span<const int>)>& fn);

  const std::vector<Vertex>& support() const noexcept { return support_; }
  int num_states() const noexcept { return num_states_; }
  int base() const noexcept { return base_; }
  const std::vector<Rational>& table() const noexcept { return table_; }
  std::vector<Rational>& table() noexcept { return table_; }

  std::size_t index(std::span<const int> states) const;
  std::vector<int> states_at(std::size_t index) const;
  Rational at(std::span<const int> states) const { return table_[index(states)]; }
  Rational operator()(const Configuration& eta) const;

  /// Same function tabulated over a superset of the support.
  LocalFunction extended(const std::vector<Vertex>& superset) const;
  /// iota^Lambda: eta -> f(eta restricted to Lambda), tabulated over Lambda.
  LocalFunction restricted(const std::vector<Vertex>& lambda) const;
  /// Vertices the table actually depends on.
  std::vector<Vertex> essential_support() const;
  LocalFunction trimmed() const { return restricted(essential_support()); }
  /// Relabels support vertices through `map` (must be injective).
  LocalFunction relabeled(const std::function<Vertex(const Vertex&)>& map) const;

  bool is_zero() const;
  /// Equality as functions on S^X_*.
  bool equals(const LocalFunction& other) const;
  /// f(eta) = 0 whenever a support coordinate is at base.
  bool has_exact_support() const;

  LocalFunction& operator+=(const LocalFunction& other);
  LocalFunction& operator-=(const LocalFunction& other);
  LocalFunction& operator*=(const Rational& c);

 private:
  std::vector<Vertex> support_;
  int num_states_ = 1;
  int base_ = 0;
  std::vector<Rational> table_{Rational(0)};
};

LocalFunction operator+(LocalFunction a, const LocalFunction& b);
LocalFunction operator-(LocalFunction a, const LocalFunction& b);
LocalFunction operator*(const Rational& c, LocalFunction f);

std::vector<Vertex> support_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b);

/// Evaluates a LocalFunction on dense window state vectors.
class BoundFunction {
 public:
  BoundFunction(const LocalFunction& f, const Window& window);
  Rational operator()(std::span<const State> states) const;

 private:
  const LocalFunction* f_;
  std::vector<int> positions_;  // -1: outside the window, read as base
};

/// Terms f_{Lambda'} of the unique exact-support expansion, keyed by subset mask of the domain.
struct ExactSupportExpansion {
  std::vector<Vertex> domain;
  std::map<std::uint32_t, LocalFunction> terms;

  std::vector<Vertex> subset(std::uint32_t mask) const;
  /// Sum of all terms, tabulated over the domain.
  LocalFunction reconstruct() const;
};

enum class ExpansionMethod { recursion, mobius };

ExactSupportExpansion expand(const LocalFunction& f, ExpansionMethod method = ExpansionMethod::recursion);
/// Expansion of any function on configurations supported in `domain`.
ExactSupportExpansion expand(const std::function<Rational(const Configuration&)>& f, const std::vector<Vertex>& domain,
                             int num_states, int base, ExpansionMethod method = ExpansionMethod::mobius);

struct UniformityCertificate {
  long radius = 0;
  long max_diameter = 0;
  bool passes = true;
  std::string scope;
};

UniformityCertificate uniformity(const ExactSupportExpansion& expansion, const Locale& locale, long radius);
UniformityCertificate uniformity(const LocalFunction& f, const Locale& locale, long radius);

/// One local function per directed window edge.
class Form {
 public:
  Form(WindowPtr window, int num_states, int base, long radius);

  const Window& window() const noexcept { return *window_; }
  const WindowPtr& window_ptr() const noexcept { return window_; }
  int num_states() const noexcept { return num_states_; }
  int base() const noexcept { return base_; }
  long radius() const noexcept { return radius_; }
  void set_radius(long r) { radius_ = r; }
  std::size_t num_edges() const noexcept { return fns_.size(); }
  const LocalFunction& at(int edge) const { return fns_[static_cast<std::size_t>(edge)]; }
  LocalFunction& at(int edge) { return fns_[static_cast<std::size_t>(edge)]; }
  const LocalFunction* find(const Vertex& o, const Vertex& t) const;

  Form& operator-=(const Form& other);
  Form& operator+=(const Form& other);

 private:
  WindowPtr window_;
  int num_states_;
  int base_;
  long radius_;
  std::vector<LocalFunction> fns_;
};

/// grad_e f(eta) = f(eta^e) - f(eta), tabulated on supp f and the edge endpoints.
LocalFunction gradient(const LocalFunction& f, const Vertex& o, const Vertex& t, const Interaction& phi);
Form differential(const LocalFunction& f, const WindowPtr& window, const Interaction& phi);
/// Smallest R with every edge function supported in B(e, R) (essential supports).
long effective_radius(const Form& form);

struct FormCheck {
  bool ok = true;
  std::string violation;
  int edge = -1;
  std::optional<Configuration> eta;
};

/// Checks vanishing on fixed points, alternation, and agreement of edges with equal effect.
FormCheck validate_form(const Form& form, const Interaction& phi);

struct ClosedReport {
  bool closed = true;
  std::size_t num_configurations = 0;
  int num_components = 0;
  /// A closed path with nonzero integral when not closed.
  PathSeq witness;
  Rational witness_integral;
};

ClosedReport is_closed(const Form& form, const Interaction& phi, const GraphOptions& options = {});
Rational integrate_along(const Form& form, const PathSeq& path);

/// Potential on a configuration space.
struct Potential {
  std::shared_ptr<const ConfigSpace> space;
  std::vector<Rational> values;
  std::vector<int> component;

  Rational operator()(const Configuration& eta) const;
};

/// Throws not_closed (with witness in the message) when the form is not closed.
Potential integrate(const Form& form, const Interaction& phi, const GraphOptions& options = {});

/// Potential table of a function on the space (used to compare with integrate()).
std::vector<Rational> tabulate(const ConfigSpace& space, const LocalFunction& f);

}  // namespace ucoh
