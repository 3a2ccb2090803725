#include "ucoh/errors.hpp"
#include "ucoh/linalg.hpp"
#include "ucoh/rational.hpp"

#include <regex>

namespace ucoh {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_vertex: return "invalid-vertex";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::not_a_tiling: return "not-a-tiling";
    case ErrorKind::non_total_table: return "non-total-table";
    case ErrorKind::not_exchangeable: return "not-exchangeable";
    case ErrorKind::no_path: return "no-path-in-window";
    case ErrorKind::not_closed: return "not-closed";
    case ErrorKind::ill_defined_pairing: return "ill-defined-pairing";
    case ErrorKind::window_too_small: return "window-too-small";
    case ErrorKind::cocycle_violated: return "cocycle-violated";
    case ErrorKind::splitting_infeasible: return "splitting-infeasible";
    case ErrorKind::support_leaves_window: return "support-leaves-window";
    case ErrorKind::not_invariant: return "not-invariant";
    case ErrorKind::inconsistent_cocycle: return "inconsistent-cocycle";
    case ErrorKind::decomposition_residual: return "decomposition-residual";
  }
  return "unknown";
}

std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern))
    throw Error(ErrorKind::invalid_input, "not a rational: '" + std::string(text) + "'");
  Integer num(m[1].str());
  Integer den(1);
  if (m[2].matched) {
    den = Integer(m[2].str());
    if (den == 0) throw Error(ErrorKind::invalid_input, "zero denominator");
  }
  return Rational(num, den);
}

VectorQ primitive_integer(const VectorQ& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  using boost::multiprecision::numerator;
  Integer l(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, Integer(denominator(v(i))));
  Integer g(0);
  std::optional<Eigen::Index> lead;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Integer k = Integer(numerator(v(i))) * (l / Integer(denominator(v(i))));
    if (k != 0 && !lead) lead = i;
    g = gcd(g, k);
  }
  if (!lead) return v;
  Rational scale(l, g);
  if (v(*lead) < 0) scale = -scale;
  VectorQ out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) *= scale;
  return out;
}

}  // namespace ucoh
