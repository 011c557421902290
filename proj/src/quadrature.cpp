// Gauss-Laguerre rule (weight e^-x) generated at run time in 50-digit
// arithmetic. The integrands reach 1e17 at the outer nodes while the integral
// can be exactly zero, so double-precision nodes are not enough.

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "stark/integrals.hpp"

namespace stark::integrals {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

struct Rule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

// L_n(z) and L_{n-1}(z) (m = 0) by recurrence.
std::pair<Real, Real> laguerre_pair(unsigned n, const Real& z) {
  Real p1 = 1, p2 = 0;
  for (unsigned j = 1; j <= n; ++j) {
    const Real p3 = p2;
    p2 = p1;
    p1 = ((2 * j - 1 - z) * p2 - (j - 1) * p3) / j;
  }
  return {p1, p2};
}

Rule build_rule(unsigned n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real eps = std::numeric_limits<Real>::epsilon() * 64;
  double z_guess = 0.0;
  for (unsigned i = 0; i < n; ++i) {
    // Initial guesses for the i-th root (ascending), refined by Newton.
    if (i == 0) {
      z_guess = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z_guess += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z_guess += (1.0 + 2.55 * ai) / (1.9 * ai) * (z_guess - rule.nodes[i - 2].convert_to<double>());
    }
    Real z = z_guess;
    Real pp = 0, p2 = 0;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      auto [p1, q2] = laguerre_pair(n, z);
      p2 = q2;
      pp = (n * p1 - n * p2) / z;
      const Real step = p1 / pp;
      z -= step;
      if (abs(step) <= eps * z) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("Gauss-Laguerre node refinement did not converge");
    auto [p1, q2] = laguerre_pair(n, z);
    pp = (n * p1 - n * q2) / z;
    rule.nodes[i] = z;
    rule.weights[i] = -1 / (pp * n * q2);
    z_guess = z.convert_to<double>();
  }
  return rule;
}

const Rule& rule_for(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<const Rule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const Rule>(build_rule(n));
  return *slot;
}

Real laguerre_mp(unsigned k, unsigned m, const Real& x) {
  Real prev = 1;
  if (k == 0) return prev;
  Real cur = 1 + m - x;
  for (unsigned j = 1; j < k; ++j) {
    Real next = ((2 * j + m + 1 - x) * cur - (j + m) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

} // namespace

unsigned quadrature_order(const ZQuery& q) {
  const unsigned degree = q.alpha + q.m + q.k + q.kprime;
  return (degree + 1) / 2 + 1;
}

double z_quadrature(const ZQuery& q) {
  const Rule& rule = rule_for(quadrature_order(q));
  Real sum = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Real& x = rule.nodes[i];
    sum += rule.weights[i] * pow(x, q.alpha + q.m) * laguerre_mp(q.k, q.m, x) * laguerre_mp(q.kprime, q.m, x);
  }
  return sum.convert_to<double>();
}

} // namespace stark::integrals
