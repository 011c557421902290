#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stark {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as an exact integer. Small arguments are served from a shared table.
BigInt factorial(unsigned n);

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(unsigned n, unsigned k);

/// (a)! / (b)! for a >= b, computed as a falling product.
BigInt factorial_ratio(unsigned a, unsigned b);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);

/// Nearest double.
double to_double(const Rational& r);

} // namespace stark
