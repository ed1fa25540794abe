#pragma once

// Exact arithmetic used throughout: arbitrary-precision integers and
// rationals (GMP-backed) plugged into Eigen dense containers.  No
// floating point is used anywhere in the library.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <stdexcept>

namespace curvetop {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IMat = DenseMatrix<Int>;
using IVec = DenseVector<Int>;
using Vec2 = Eigen::Matrix<Int, 2, 1>;

// Oriented area of the pair (a, b); the 2x2 determinant det[a b].
inline Int det2(const Vec2& a, const Vec2& b) { return a(0) * b(1) - a(1) * b(0); }

inline bool is_primitive(const Vec2& v) {
  return boost::multiprecision::gcd(v(0), v(1)) == 1;
}

// Exact integer quotient; throws if the division has a remainder.
inline Int divide_exact(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("divide_exact: zero divisor");
  Int q = num / den;
  if (q * den != num) throw std::logic_error("divide_exact: inexact division");
  return q;
}

inline std::string to_string(const Int& v) { return v.str(); }
inline std::string to_string(const Rat& v) {
  return denominator(v) == 1 ? numerator(v).str() : numerator(v).str() + "/" + denominator(v).str();
}

// Parses "p/q" or a plain integer string into an exact rational.
Rat parse_rational(const std::string& text);

}  // namespace curvetop
