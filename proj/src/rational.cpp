#include "stark/rational.hpp"

#include <array>
#include <sstream>

namespace stark {

namespace {

constexpr unsigned kFactorialTableSize = 64;

const std::array<BigInt, kFactorialTableSize>& factorial_table() {
  static const auto table = [] {
    std::array<BigInt, kFactorialTableSize> t;
    t[0] = 1;
    for (unsigned i = 1; i < kFactorialTableSize; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

} // namespace

BigInt factorial(unsigned n) {
  if (n < kFactorialTableSize) return factorial_table()[n];
  BigInt r = factorial_table()[kFactorialTableSize - 1];
  for (unsigned i = kFactorialTableSize; i <= n; ++i) r *= i;
  return r;
}

BigInt factorial_ratio(unsigned a, unsigned b) {
  BigInt r = 1;
  for (unsigned i = b + 1; i <= a; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace stark
