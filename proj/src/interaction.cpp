#include "ucoh/errors.hpp"
#include "ucoh/interaction.hpp"
#include "ucoh/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ucoh {

StateSpace::StateSpace(std::vector<int> labels, int base_label) : labels_(std::move(labels)) {
  if (labels_.empty()) throw Error(ErrorKind::invalid_input, "state space is empty");
  if (std::set<int>(labels_.begin(), labels_.end()).size() != labels_.size())
    throw Error(ErrorKind::invalid_input, "state labels must be distinct");
  if (labels_.size() > 255) throw Error(ErrorKind::invalid_input, "at most 255 states are supported");
  base_ = index_of(base_label);
}

int StateSpace::index_of(int label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw Error(ErrorKind::invalid_input, "unknown state " + std::to_string(label));
  return static_cast<int>(it - labels_.begin());
}

Interaction::Interaction(StateSpace states, const std::vector<std::array<int, 4>>& entries, std::string name)
    : states_(std::move(states)), name_(std::move(name)) {
  const int n = states_.size();
  table_.resize(static_cast<std::size_t>(n * n));
  std::vector<bool> listed(table_.size(), false);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table_[static_cast<std::size_t>(a * n + b)] = {a, b};
  for (const auto& e : entries) {
    for (int c : e)
      if (c < 0 || c >= n) throw Error(ErrorKind::non_total_table, "table entry refers to an unknown state");
    const auto k = static_cast<std::size_t>(e[0] * n + e[1]);
    const StatePair target{e[2], e[3]};
    if (listed[k] && table_[k] != target)
      throw Error(ErrorKind::non_total_table, "conflicting entries for one pair");
    listed[k] = true;
    table_[k] = target;
  }
}

std::vector<std::array<int, 4>> Interaction::entries() const {
  std::vector<std::array<int, 4>> out;
  const int n = num_states();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const auto [c, d] = apply(a, b);
      if (c != a || d != b) out.push_back({a, b, c, d});
    }
  return out;
}

// ---------------------------------------------------------------- catalog

namespace {

int parse_parameter(const std::string& name, const std::string& prefix, int min_value) {
  const std::string digits = name.substr(prefix.size());
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw Error(ErrorKind::invalid_input, "bad parameter in interaction name '" + name + "'");
  const int k = std::stoi(digits);
  if (k < min_value) throw Error(ErrorKind::invalid_input, "parameter too small in '" + name + "'");
  return k;
}

std::vector<int> range_labels(int lo, int hi) {
  std::vector<int> v(static_cast<std::size_t>(hi - lo + 1));
  std::iota(v.begin(), v.end(), lo);
  return v;
}

Interaction swap_model(int kappa, const std::string& name) {
  StateSpace s(range_labels(0, kappa), 0);
  std::vector<std::array<int, 4>> e;
  for (int a = 0; a <= kappa; ++a)
    for (int b = 0; b <= kappa; ++b)
      if (a != b) e.push_back({a, b, b, a});
  return Interaction(s, e, name);
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"exclusion", "multispecies:2", "multispecies:3", "generalized-exclusion:2",
          "lattice-gas:2", "spin3", "glauber", "pair-creation"};
}

Interaction catalog_interaction(const std::string& name) {
  if (name == "exclusion") return swap_model(1, name);
  if (name.rfind("multispecies:", 0) == 0) return swap_model(parse_parameter(name, "multispecies:", 1), name);
  if (name.rfind("generalized-exclusion:", 0) == 0) {
    const int k = parse_parameter(name, "generalized-exclusion:", 1);
    StateSpace s(range_labels(0, k), 0);
    std::vector<std::array<int, 4>> e;
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        if (a - 1 >= 0 && b + 1 <= k) e.push_back({a, b, a - 1, b + 1});
    Interaction phi(s, e, name);
    phi.add_note("state space N truncated to {0.." + std::to_string(k) + "}");
    return phi;
  }
  if (name.rfind("lattice-gas:", 0) == 0) {
    const int k = parse_parameter(name, "lattice-gas:", 2);
    StateSpace s(range_labels(0, k), 0);
    std::vector<std::array<int, 4>> e;
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        if (a > 0 && b == 0)
          e.push_back({a, b, b, a});
        else if (a > 1 && b > 0 && b + 1 <= k)
          e.push_back({a, b, a - 1, b + 1});
      }
    Interaction phi(s, e, name);
    phi.add_note("state space N truncated to {0.." + std::to_string(k) + "}");
    return phi;
  }
  if (name == "spin3") {
    StateSpace s({-1, 0, 1}, 0);
    const auto idx = [&](int label) { return s.index_of(label); };
    std::vector<std::array<int, 4>> e{
        {idx(0), idx(0), idx(-1), idx(1)},
        {idx(-1), idx(1), idx(1), idx(-1)},
        {idx(1), idx(-1), idx(0), idx(0)},
    };
    for (int a : {-1, 0, 1})
      for (int b : {-1, 0, 1})
        if (a + b != 0 && a != b) e.push_back({idx(a), idx(b), idx(b), idx(a)});
    return Interaction(s, e, name);
  }
  if (name == "glauber") {
    StateSpace s({0, 1}, 0);
    return Interaction(s, {{0, 0, 1, 0}, {0, 1, 1, 1}, {1, 0, 0, 0}, {1, 1, 0, 1}}, name);
  }
  if (name == "pair-creation") {
    StateSpace s({0, 1}, 0);
    return Interaction(s, {{0, 0, 1, 1}, {1, 1, 0, 0}}, name);
  }
  throw Error(ErrorKind::invalid_input, "unknown interaction '" + name + "'");
}

std::optional<MatrixQ> catalog_basis(const std::string& name) {
  if (name.rfind("lattice-gas:", 0) == 0) {
    const auto phi = catalog_interaction(name);
    const int n = phi.num_states();
    MatrixQ rows = MatrixQ::Zero(2, n);
    for (int s = 0; s < n; ++s) {
      rows(0, s) = phi.states().label(s);
      rows(1, s) = phi.states().label(s) > 0 ? 1 : 0;
    }
    return rows;
  }
  if (name.rfind("multispecies:", 0) == 0) {
    const auto phi = catalog_interaction(name);
    const int n = phi.num_states();
    MatrixQ rows = MatrixQ::Zero(n - 1, n);
    for (int i = 1; i < n; ++i) rows(i - 1, i) = 1;
    return rows;
  }
  if (name == "exclusion" || name == "spin3" || name.rfind("generalized-exclusion:", 0) == 0) {
    const auto phi = catalog_interaction(name);
    MatrixQ rows(1, phi.num_states());
    for (int s = 0; s < phi.num_states(); ++s) rows(0, s) = phi.states().label(s);
    return rows;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- validity

ValidityReport validate_interaction(const Interaction& phi) {
  ValidityReport r;
  const int n = phi.num_states();
  r.strict = true;
  for (int a = 0; a < n && r.strict; ++a)
    for (int b = 0; b < n; ++b) {
      const auto [c, d] = phi.apply(a, b);
      if (c == a && d == b) continue;
      if (phi.apply_reversed(c, d) != StatePair{a, b}) {
        r.strict = false;
        r.strict_witness = StatePair{a, b};
        break;
      }
    }
  // Two-site window {u, v} with edges (u, v) and (v, u).
  r.relaxed = true;
  for (int a = 0; a < n && r.relaxed; ++a)
    for (int b = 0; b < n && r.relaxed; ++b)
      for (bool rev : {false, true}) {
        const StatePair target = rev ? phi.apply_reversed(a, b) : phi.apply(a, b);
        if (target == StatePair{a, b}) continue;
        const auto [c, d] = target;
        if (phi.apply(c, d) != StatePair{a, b} && phi.apply_reversed(c, d) != StatePair{a, b}) {
          r.relaxed = false;
          r.relaxed_witness = std::make_pair(StatePair{a, b}, rev);
          break;
        }
      }
  return r;
}

// ---------------------------------------------------------------- conserved quantities

ConsvBasis solve_conserved_quantities(const Interaction& phi) {
  const int n = phi.num_states();
  std::vector<VectorQ> constraints;
  VectorQ base_row = VectorQ::Zero(n);
  base_row(phi.base()) = 1;
  constraints.push_back(base_row);
  for (const auto& e : phi.entries()) {
    VectorQ row = VectorQ::Zero(n);
    row(e[0]) += 1;
    row(e[1]) += 1;
    row(e[2]) -= 1;
    row(e[3]) -= 1;
    if (!row.isZero()) constraints.push_back(row);
  }
  MatrixQ a(static_cast<Eigen::Index>(constraints.size()), n);
  for (std::size_t i = 0; i < constraints.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = constraints[i].transpose();
  const MatrixQ kernel = nullspace(a);
  ConsvBasis basis;
  basis.rows = MatrixQ(kernel.cols(), n);
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) basis.rows.row(k) = primitive_integer(kernel.col(k)).transpose();
  return basis;
}

bool is_conserved_basis(const Interaction& phi, const MatrixQ& rows) {
  if (rows.cols() != phi.num_states()) return false;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (rows(i, phi.base()) != 0) return false;
    for (const auto& e : phi.entries())
      if (rows(i, e[0]) + rows(i, e[1]) != rows(i, e[2]) + rows(i, e[3])) return false;
  }
  return rank(rows) == rows.rows();
}

// ---------------------------------------------------------------- exchangeability

StatePair apply_witness(const Interaction& phi, const SwapWitness& w, int s1, int s2) {
  StatePair cur{s1, s2};
  for (int k = 0; k < w.power; ++k) cur = w.reversed ? phi.apply_reversed(cur.first, cur.second)
                                                     : phi.apply(cur.first, cur.second);
  return cur;
}

ExchangeReport is_exchangeable(const Interaction& phi) {
  const int n = phi.num_states();
  const int bound = n * n + 1;
  ExchangeReport r;
  r.exchangeable = true;
  r.witness.resize(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto& w = r.witness[static_cast<std::size_t>(a * n + b)];
      if (a == b) {
        w = {true, false, 0};
        continue;
      }
      for (bool rev : {false, true}) {
        StatePair cur{a, b};
        for (int k = 1; k <= bound && !w.found; ++k) {
          cur = rev ? phi.apply_reversed(cur.first, cur.second) : phi.apply(cur.first, cur.second);
          if (cur == StatePair{b, a}) w = {true, rev, k};
        }
        if (w.found) break;
      }
      if (!w.found && r.exchangeable) {
        r.exchangeable = false;
        r.failure = StatePair{a, b};
      }
    }
  return r;
}

bool is_simple(const Interaction& phi, const ConsvBasis& basis) {
  if (basis.dim() != 1) return false;
  using boost::multiprecision::gcd;
  using boost::multiprecision::numerator;
  // Work with the primitive integer representative of the single basis vector.
  const VectorQ xi = primitive_integer(basis.rows.row(0).transpose());
  bool pos = false, neg = false;
  Integer g(0), min_abs(-1);
  for (int s = 0; s < phi.num_states(); ++s) {
    const Integer v = numerator(xi(s));
    if (v == 0) continue;
    (v > 0 ? pos : neg) = true;
    const Integer av = v < 0 ? Integer(-v) : v;
    g = gcd(g, av);
    if (min_abs < 0 || av < min_abs) min_abs = av;
  }
  if (!pos && !neg) return false;
  // Mixed signs generate the group gZ; one sign generates gN exactly when g is attained.
  return (pos && neg) || min_abs == g;
}

Quantity zero_quantity(const ConsvBasis& basis) { return Quantity(static_cast<std::size_t>(basis.dim()), Rational(0)); }

Quantity quantity_of_state(const ConsvBasis& basis, int state) {
  Quantity q(static_cast<std::size_t>(basis.dim()));
  for (int i = 0; i < basis.dim(); ++i) q[static_cast<std::size_t>(i)] = basis.rows(i, state);
  return q;
}

void add_quantity(Quantity& acc, const Quantity& q) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += q[i];
}

}  // namespace ucoh
