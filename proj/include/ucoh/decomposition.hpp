// Group actions on functions and forms, coordinate-weighted potentials, cocycle extraction
// and the decomposition of invariant closed forms.
#pragma once

#include "ucoh/cohomology.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ucoh {

/// (g f)(eta) = f(eta^g) with eta^g_x = eta_{g x}; the support moves to g(supp f).
LocalFunction act_on_function(const GroupAction& action, const GroupElement& g, const LocalFunction& f,
                              const Window* window = nullptr);

/// (g w)_e = g(w_{g^-1 e}). Edges whose preimage is not a window edge stay zero and are listed in `undefined`.
Form act_on_form(const GroupAction& action, const GroupElement& g, const Form& form,
                 std::vector<int>* undefined = nullptr);

struct InvarianceReport {
  bool invariant = true;
  long margin = 0;
  std::size_t edges_checked = 0;
  std::optional<std::pair<Vertex, Vertex>> witness_edge;
  int generator = -1;
};

/// Compares g(w_e) with w_{g e} for every generator and its inverse on edges inside the margin.
InvarianceReport is_shift_invariant(const Form& form, const GroupAction& action, long margin);

/// Interior margin used for invariance and identity checks.
long interior_margin(const Form& form, const GroupAction& action, const std::vector<Vertex>& domain);

/// Cocycle coefficients: rows index the conserved-quantity basis, columns the generators.
using Cocycle = MatrixQ;

/// rho(g) as a function on states, for g given by its abelianized coordinates.
std::vector<Rational> cocycle_value(const Cocycle& a, const ConsvBasis& basis, const std::vector<int>& coords,
                                    int num_states);

/// theta(eta) = sum over sites of rho(g(x))(eta_x), g(x) the orbit coordinate of x.
ConfigFunction theta(const Cocycle& a, const GroupAction& action, const std::vector<Vertex>& domain,
                     const ConsvBasis& basis, int num_states);

/// The differential of theta, supported on each edge.
Form build_omega_rho(const Cocycle& a, const GroupAction& action, const std::vector<Vertex>& domain,
                     const WindowPtr& window, const ConsvBasis& basis, const Interaction& phi);

/// Differential of sum_g g(f) over all translates of the terms, restricted to window edges.
Form orbit_sum_differential(const std::vector<LocalFunction>& terms, const GroupAction& action,
                            const WindowPtr& window, const Interaction& phi);

/// Vertex of least eccentricity in the window graph (lexicographically least on ties).
Vertex window_center(const Window& window);

/// Potential of a closed form on configurations supported in a region, one fiber of the
/// quantity totals at a time. The zero fiber is pinned at the base configuration, any other
/// fiber at the first configuration requested from it.
class FiberPotential {
 public:
  FiberPotential(const Form& form, const Interaction& phi, ConsvBasis basis, WindowPtr region,
                 std::size_t budget = 2'000'000);
  Rational operator()(const Configuration& eta);
  const Window& region() const noexcept { return *region_; }
  std::size_t num_fibers() const noexcept { return fibers_.size(); }

 private:
  using Fiber = std::unordered_map<std::string, Rational>;
  std::string dense(const Configuration& eta) const;
  Fiber explore(const std::string& pin) const;

  Interaction phi_;
  ConsvBasis basis_;
  WindowPtr region_;
  std::vector<LocalFunction> edge_fns_;
  std::vector<BoundFunction> bound_;
  std::size_t budget_;
  std::map<Quantity, Fiber, QuantityLess> fibers_;
};

struct CocycleResult {
  Cocycle a;
  Vertex center;
  std::size_t cross_checks = 0;
  std::size_t cross_checks_skipped = 0;
};

/// Recovers the class of an invariant closed form from (1 - g_j) v on one-site configurations
/// at the window center, then cross-checks on two-site configurations.
CocycleResult extract_cocycle(const Form& form, const Interaction& phi, const ConsvBasis& basis,
                              const GroupAction& action);

struct DecompositionResult {
  Cocycle a;
  /// Exact-support terms of the local function; their orbit sums give F.
  std::vector<LocalFunction> terms;
  Rational residual;
  long form_radius = 0;
  long averaging_diameter = 0;
  long margin = 0;
  std::size_t edges_checked = 0;
  Vertex center;
  PairingTable table;
  SplittingResult splitting;
};

/// Writes an invariant closed form as the differential of sum_g g(f) plus omega_rho.
DecompositionResult varadhan_decompose(const Form& form, const Interaction& phi, const ConsvBasis& basis,
                                       const GroupAction& action, const std::vector<Vertex>& domain);

struct CounterexampleReport {
  long half_width = 0;
  bool closed = false;
  bool potential_matches = false;
  bool formula_matches = false;
  Rational h_left_right;   // h((1,0),(0,1)) with left-right probes
  Rational h_right_left;   // h((0,1),(1,0)) with left-right probes
  Rational swapped_value;  // h((1,0),(0,1)) from right-left probes
  bool asymmetric = false;
  bool cocycle = false;
  bool splitting_infeasible = false;
  PairingTable table;
  SplittingResult splitting;
};

/// Two-species exchange on a segment of Z with the current form that counts 2-1 crossings.
CounterexampleReport counterexample_z_multispecies(long half_width = 4);

}  // namespace ucoh
