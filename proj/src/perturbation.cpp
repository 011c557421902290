#include "stark/perturbation.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "stark/integrals.hpp"
#include "stark/laguerre.hpp"

namespace stark::perturbation {

namespace {

using integrals::ZQuery;
using integrals::z_closed_form;

Rational z(unsigned alpha, unsigned k, unsigned kprime, unsigned m) {
  return z_closed_form(ZQuery{alpha, k, kprime, m});
}

// int x^alpha u_k(x) Phi_k(x) dx
Rational phi_moment(unsigned alpha, unsigned k, const ParabolicState& s) {
  Rational acc = 0;
  for (const auto& term : phi_expansion(k, s))
    acc += term.coefficient * z(alpha, k, static_cast<unsigned>(term.index), s.m);
  return acc;
}

double phi_eval(unsigned k, const ParabolicState& s, double x) {
  double acc = 0.0;
  for (const auto& term : phi_expansion(k, s))
    acc += to_double(term.coefficient) * laguerre::u_eval(static_cast<unsigned>(term.index), s.m, x);
  return acc;
}

Rational signed_diff(unsigned a, unsigned b) { return Rational(static_cast<long long>(a) - static_cast<long long>(b)); }

} // namespace

ParabolicState make_state(int n1, int n2, int m) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("parabolic quantum numbers must be nonnegative");
  return {static_cast<unsigned>(n1), static_cast<unsigned>(n2), static_cast<unsigned>(std::abs(m))};
}

double StarkExpansion::energy(double field, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("order must be 0, 1 or 2");
  double e = to_double(e0);
  if (order >= 1) e += to_double(e1) * field;
  if (order >= 2) e += to_double(e2) * field * field;
  return e;
}

CoordinatePoint to_parabolic(double r, double z, double phi) {
  if (!(r >= 0.0) || std::abs(z) > r) throw std::invalid_argument("to_parabolic: requires |z| <= r");
  return {r + z, r - z, phi};
}

double jacobian(double xi, double eta) { return 0.25 * (xi + eta); }

Rational e0(const ParabolicState& s) {
  const unsigned n = s.principal();
  return Rational(-1, 2 * BigInt(n) * n);
}

Rational normalization_a_squared(const ParabolicState& s) {
  const BigInt n = s.principal();
  // n1! n2! / (n^4 (n1+m)! (n2+m)!)
  return Rational(1, n * n * n * n * factorial_ratio(s.n1 + s.m, s.n1) * factorial_ratio(s.n2 + s.m, s.n2));
}

Rational e1_closed(const ParabolicState& s) {
  return Rational(3, 2) * s.principal() * signed_diff(s.n1, s.n2);
}

Rational e1_from_integrals(const ParabolicState& s) {
  // E1 = 2 pi A^2 int int ((xi - eta)/2) u1^2 u2^2 (xi + eta)/4 dxi deta
  //    = (n^4 pi A^2 / 4) [ Z(2,n1,n1) Z(0,n2,n2) - Z(0,n1,n1) Z(2,n2,n2) ]
  const unsigned n = s.principal();
  const Rational pref = normalization_a_squared(s) * Rational(BigInt(n) * n * n * n, 4);
  auto unified = [&](unsigned k, unsigned l) { return pref * z(2, k, k, s.m) * z(0, l, l, s.m); };
  return unified(s.n1, s.n2) - unified(s.n2, s.n1);
}

std::vector<PhiTerm> phi_expansion(unsigned k, const ParabolicState& s) {
  if (k != s.n1 && k != s.n2) throw std::invalid_argument("phi_expansion: k must be n1 or n2 of the state");
  const long long n = s.principal();
  const long long m = s.m;
  const long long kk = k;
  std::vector<PhiTerm> terms;
  auto push = [&](long long index, Rational c) {
    if (index >= 0 && c != 0) terms.push_back({static_cast<int>(index), std::move(c)});
  };
  push(kk - 2, Rational(-(kk + m) * (kk + m - 1), 2));
  push(kk - 1, Rational((3 * n - m - 3 - 2 * kk) * (kk + m)));
  push(kk, Rational(3 * kk));
  push(kk + 1, Rational(-(3 * n - m + 1 - 2 * kk) * (kk + 1)));
  push(kk + 2, Rational((kk + 1) * (kk + 2), 2));
  return terms;
}

Rational e2_closed(const ParabolicState& s) {
  const BigInt n = s.principal();
  const BigInt d = BigInt(static_cast<long long>(s.n1) - static_cast<long long>(s.n2));
  const BigInt bracket = 17 * n * n - 3 * d * d - 9 * BigInt(s.m) * s.m + 19;
  return Rational(-(n * n * n * n) * bracket, 16);
}

Rational e2_from_integrals(const ParabolicState& s) {
  // psi1 = -(n^3 A/4) [Phi1 u2 - u1 Phi2], x = xi/n, y = eta/n and
  // (z - E1) |J| dxi deta = (n^3/4) [n (x^2 - y^2)/2 - E1 (x + y)] dx dy, hence
  // E2 = -(n^6 pi A^2 / 8) { n/2 [P2 T0 - P0 T2 - S2 Q0 + S0 Q2]
  //                          - E1 [P1 T0 + P0 T1 - S1 Q0 - S0 Q1] }
  // with P_a = int x^a u1 Phi1, S_a = int x^a u1^2 (xi channel) and
  // Q_a, T_a the same for the eta channel.
  const unsigned n = s.principal();
  const unsigned m = s.m;
  Rational P[3], S[3], Q[3], T[3];
  for (unsigned a = 0; a < 3; ++a) {
    P[a] = phi_moment(a, s.n1, s);
    S[a] = z(a, s.n1, s.n1, m);
    Q[a] = phi_moment(a, s.n2, s);
    T[a] = z(a, s.n2, s.n2, m);
  }
  const Rational e1 = e1_closed(s);
  const Rational quadratic = Rational(n, 2) * (P[2] * T[0] - P[0] * T[2] - S[2] * Q[0] + S[0] * Q[2]);
  const Rational linear = e1 * (P[1] * T[0] + P[0] * T[1] - S[1] * Q[0] - S[0] * Q[1]);
  const BigInt n6 = pow(BigInt(n), 6);
  return -Rational(n6, 8) * normalization_a_squared(s) * (quadratic - linear);
}

Rational e2_printed_k(const ParabolicState& s) {
  const long long n = s.principal();
  const long long m = s.m;
  auto k_ij = [&](long long i, long long j) {
    const long long bracket = 4 * i * (i * i - 1) + 6 * i * (i + i * m + m * m + m - 1) +
                              (m * m + 3 * m + 2) * (3 * i - 3 * j + 2 * m - 3) +
                              18 * (i * i + i * m + i) * (i - j - 2 * n);
    return Rational(BigInt(n) * n * n * bracket, 16);
  };
  return k_ij(s.n1, s.n2) + k_ij(s.n2, s.n1);
}

SecondOrderReport second_order_report(const ParabolicState& s) {
  return {e2_closed(s), e2_from_integrals(s), e2_printed_k(s)};
}

StarkExpansion expansion(const ParabolicState& s) { return {e0(s), e1_closed(s), e2_closed(s)}; }

double stark_energy(const ParabolicState& s, double field, int order) {
  if (!(field >= 0.0)) throw std::invalid_argument("stark_energy: field must be nonnegative");
  return expansion(s).energy(field, order);
}

double splitting(const ParabolicState& s, double field, int order) {
  return stark_energy(s, field, order) - to_double(e0(s));
}

std::vector<ParabolicState> enumerate_states(unsigned n) {
  if (n == 0) throw std::invalid_argument("enumerate_states: n must be positive");
  std::vector<ParabolicState> out;
  out.reserve(n * (n + 1) / 2);
  for (unsigned m = 0; m < n; ++m) {
    const unsigned total = n - 1 - m;  // n1 + n2
    for (unsigned n2 = 0; n2 <= total; ++n2) out.push_back({total - n2, n2, m});
  }
  return out;
}

double psi0(const ParabolicState& s, double xi, double eta) {
  const double n = s.principal();
  const double a = std::sqrt(to_double(normalization_a_squared(s)) / std::numbers::pi);
  return a * laguerre::u_eval(s.n1, s.m, xi / n) * laguerre::u_eval(s.n2, s.m, eta / n);
}

double first_order_wavefunction(const ParabolicState& s, double xi, double eta) {
  const double n = s.principal();
  const double a = std::sqrt(to_double(normalization_a_squared(s)) / std::numbers::pi);
  const double x = xi / n;
  const double y = eta / n;
  const double bracket = phi_eval(s.n1, s, x) * laguerre::u_eval(s.n2, s.m, y) -
                         laguerre::u_eval(s.n1, s.m, x) * phi_eval(s.n2, s, y);
  return -(n * n * n * a / 4.0) * bracket;
}

} // namespace stark::perturbation
