#include "stark/integrals.hpp"

namespace stark::integrals {

bool selection_rule(const ZQuery& q) {
  const unsigned gap = q.k > q.kprime ? q.k - q.kprime : q.kprime - q.k;
  return gap <= q.alpha;
}

Rational z_closed_form(const ZQuery& q) {
  if (!selection_rule(q)) return 0;
  BigInt sum = 0;
  for (unsigned i = 0; i <= q.alpha && i <= q.k; ++i) {
    // k' = k - i + j fixes j.
    const long long j = static_cast<long long>(q.kprime) - q.k + i;
    if (j < 0 || j > q.alpha) continue;
    BigInt term = binomial(q.alpha, i) * binomial(q.alpha, static_cast<unsigned>(j)) *
                  factorial_ratio(q.m + q.alpha + q.k - i, q.k - i);
    if ((i + j) % 2 != 0) term = -term;
    sum += term;
  }
  return Rational(sum);
}

Rational i2_exercise(unsigned k, unsigned kprime, unsigned m) {
  if (k != kprime) return 0;
  return Rational(factorial_ratio(k + m, k) * (2 * k + m + 1));
}

} // namespace stark::integrals
