// Exact rational scalar and the Eigen types built on it.
#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace ucoh {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixQ = Matrix<Rational>;
using VectorQ = Vector<Rational>;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
/// Accepts "p", "-p", "p/q"; throws ucoh::Error(invalid_input) otherwise.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

/// Lexicographic order on rational vectors; used for quantity-vector keys.
struct QuantityLess {
  bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace ucoh
