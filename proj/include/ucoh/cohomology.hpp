// Pairing of a function across distant regions, its cocycle laws, splittings and uniformization.
#pragma once

#include "ucoh/calculus.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace ucoh {

using ConfigFunction = std::function<Rational(const Configuration&)>;

/// Two finite regions probed together; `orientation` is left-right, right-left or unique.
struct ProbePair {
  std::vector<Vertex> first;
  std::vector<Vertex> second;
  std::string orientation = "unique";
};
using ProbePlan = std::vector<ProbePair>;

/// Pairs of radius-r balls inside the window interior whose centers are at distance 2r+R+1.
/// On line-like locales only left-right pairs are produced; elsewhere both orders.
ProbePlan default_probe_plan(const Window& window, long form_radius, int ball_radius, std::size_t max_pairs = 32);

using QuantityPair = std::pair<Quantity, Quantity>;

struct QuantityPairLess {
  bool operator()(const QuantityPair& a, const QuantityPair& b) const {
    const QuantityLess less;
    if (less(a.first, b.first)) return true;
    if (less(b.first, a.first)) return false;
    return less(a.second, b.second);
  }
};

struct PairingCell {
  Rational value;
  std::size_t samples = 0;
};

struct PairingTable {
  std::map<QuantityPair, PairingCell, QuantityPairLess> cells;
  ProbePlan probes;
  const Rational* find(const Quantity& a, const Quantity& b) const;
};

/// Tabulates f(eta on A u B) - f(eta on A) - f(eta on B) by the quantity totals on A and B,
/// enumerating every configuration on each probe union.
PairingTable compute_pairing(const ConfigFunction& f, const Window& window, const Interaction& phi,
                             const ConsvBasis& basis, long form_radius, const ProbePlan& plan,
                             std::size_t budget = 2'000'000);

struct CocycleReport {
  bool cocycle = true;
  bool symmetric = true;
  std::size_t triples_checked = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::array<Quantity, 3>> cocycle_violations;
  std::vector<QuantityPair> symmetry_violations;
};

CocycleReport check_cocycle_and_symmetry(const PairingTable& table);

using QuantityMap = std::map<Quantity, Rational, QuantityLess>;

struct SplittingResult {
  bool feasible = false;
  std::string method;  // rank-1 iteration | linear
  QuantityMap h;
  /// Coefficients of table cells whose combination is inconsistent.
  std::vector<std::pair<QuantityPair, Rational>> certificate;
  Rational certificate_value;
};

/// Finds h with h(a) + h(b) - h(a + b) = table(a, b) on every cell and h(0) = table(0, 0).
SplittingResult solve_splitting(const PairingTable& table);

struct CriterionReport {
  bool holds = true;
  std::size_t sets_checked = 0;
  std::size_t evaluations = 0;
  std::string scope;
  std::optional<Configuration> witness;
};

struct Uniformized {
  PairingTable table;
  SplittingResult splitting;
  ConfigFunction g;
  CriterionReport criterion;
  UniformityCertificate certificate;
};

/// g = f + h o (quantity totals), checked against the local-difference criterion on the probe sets.
Uniformized uniformize(const ConfigFunction& f, const Window& window, const Interaction& phi, const ConsvBasis& basis,
                       long form_radius, const ProbePlan& plan);

struct H0Report {
  int num_components = 0;
  std::size_t num_configurations = 0;
  std::vector<Quantity> values;
  bool constant_on_components = true;
  bool separates = true;
  std::optional<std::pair<Configuration, Configuration>> witness;
};

H0Report h0_report(const WindowPtr& window, const Interaction& phi, const ConsvBasis& basis,
                   const GraphOptions& options = {});

}  // namespace ucoh
