// Finite state spaces, binary interactions and their conserved quantities.
#pragma once

#include "ucoh/locale.hpp"
#include "ucoh/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ucoh {

class StateSpace {
 public:
  StateSpace(std::vector<int> labels, int base_label);

  int size() const noexcept { return static_cast<int>(labels_.size()); }
  int base() const noexcept { return base_; }
  int label(int index) const { return labels_.at(static_cast<std::size_t>(index)); }
  const std::vector<int>& labels() const noexcept { return labels_; }
  /// Throws invalid_input for an unknown label.
  int index_of(int label) const;

 private:
  std::vector<int> labels_;
  int base_ = 0;
};

using StatePair = std::pair<int, int>;

/// Map S x S -> S x S on state indices; unlisted pairs are fixed.
class Interaction {
 public:
  /// Entries are (s1, s2, t1, t2) in state indices.
  Interaction(StateSpace states, const std::vector<std::array<int, 4>>& entries, std::string name = "custom");

  const StateSpace& states() const noexcept { return states_; }
  int num_states() const noexcept { return states_.size(); }
  int base() const noexcept { return states_.base(); }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& notes() const noexcept { return notes_; }
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  StatePair apply(int s1, int s2) const {
    return table_[static_cast<std::size_t>(s1 * num_states() + s2)];
  }
  /// The reversed interaction i o phi o i.
  StatePair apply_reversed(int s1, int s2) const {
    const auto [a, b] = apply(s2, s1);
    return {b, a};
  }
  /// All non-identity entries, in (s1, s2) order.
  std::vector<std::array<int, 4>> entries() const;

 private:
  StateSpace states_;
  std::vector<StatePair> table_;
  std::string name_;
  std::vector<std::string> notes_;
};

/// Built-in models: exclusion, multispecies:k, generalized-exclusion:k, lattice-gas:k,
/// spin3, glauber, pair-creation.
Interaction catalog_interaction(const std::string& name);
/// Conserved-quantity basis as written for the model in the literature (rows indexed by state),
/// if it differs from or documents the canonical one.
std::optional<MatrixQ> catalog_basis(const std::string& name);
std::vector<std::string> catalog_names();

struct ValidityReport {
  bool strict = false;
  bool relaxed = false;
  std::optional<StatePair> strict_witness;
  /// (eta on the 2-site window, reversed edge flag) whose transition has no reverse.
  std::optional<std::pair<StatePair, bool>> relaxed_witness;
};

ValidityReport validate_interaction(const Interaction& phi);

/// Basis of conserved quantities: one row per basis vector, columns indexed by state.
struct ConsvBasis {
  MatrixQ rows;
  int dim() const { return static_cast<int>(rows.rows()); }
  Rational value(int i, int state) const { return rows(i, state); }
};

ConsvBasis solve_conserved_quantities(const Interaction& phi);
/// True if every row vanishes at base and is conserved by every table entry.
bool is_conserved_basis(const Interaction& phi, const MatrixQ& rows);

struct SwapWitness {
  bool found = false;
  bool reversed = false;  // uses the reversed interaction
  int power = 0;
};

struct ExchangeReport {
  bool exchangeable = false;
  /// witness[s1 * |S| + s2]
  std::vector<SwapWitness> witness;
  std::optional<StatePair> failure;

  const SwapWitness& at(int s1, int s2, int n) const {
    return witness[static_cast<std::size_t>(s1 * n + s2)];
  }
};

ExchangeReport is_exchangeable(const Interaction& phi);
/// Applies a witness to (s1, s2); yields (s2, s1) when the witness is valid.
StatePair apply_witness(const Interaction& phi, const SwapWitness& w, int s1, int s2);

bool is_simple(const Interaction& phi, const ConsvBasis& basis);

/// Quantity vector: totals of each basis function.
using Quantity = std::vector<Rational>;

Quantity zero_quantity(const ConsvBasis& basis);
Quantity quantity_of_state(const ConsvBasis& basis, int state);
void add_quantity(Quantity& acc, const Quantity& q);

}  // namespace ucoh
