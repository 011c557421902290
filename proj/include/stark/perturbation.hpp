#pragma once

// Rayleigh-Schroedinger Stark corrections for hydrogen in parabolic quantum
// numbers. Atomic units throughout; the perturbation is F z = F (xi - eta)/2.

#include <vector>

#include "stark/rational.hpp"

namespace stark::perturbation {

/// Parabolic quantum numbers; m is stored nonnegative (the +-m pair is degenerate).
struct ParabolicState {
  unsigned n1 = 0;
  unsigned n2 = 0;
  unsigned m = 0;

  unsigned principal() const noexcept { return n1 + n2 + m + 1; }
  /// The mirror state under z -> -z.
  ParabolicState swapped() const noexcept { return {n2, n1, m}; }
  friend bool operator==(const ParabolicState&, const ParabolicState&) = default;
};

/// Builds a state from a signed magnetic number; m is folded to |m|.
ParabolicState make_state(int n1, int n2, int m);

/// E(F) = e0 + e1 F + e2 F^2, exact coefficients.
struct StarkExpansion {
  Rational e0;
  Rational e1;  ///< per unit field
  Rational e2;  ///< per unit field squared

  /// Truncated at `order` (0, 1 or 2) and evaluated in double precision.
  double energy(double field, int order = 2) const;
};

struct CoordinatePoint {
  double xi = 0.0;
  double eta = 0.0;
  double phi = 0.0;
};

/// (r, z) -> (xi, eta) = (r + z, r - z). Throws std::invalid_argument when |z| > r.
CoordinatePoint to_parabolic(double r, double z, double phi = 0.0);

/// Volume element factor (xi + eta)/4.
double jacobian(double xi, double eta);

Rational e0(const ParabolicState& s);

/// A^2 with the 1/pi factor stripped: A^2 = normalization_a_squared(s) / pi.
Rational normalization_a_squared(const ParabolicState& s);

Rational e1_closed(const ParabolicState& s);

/// First-order shift recomputed from the Laguerre integrals Z(2,.) and Z(0,.).
Rational e1_from_integrals(const ParabolicState& s);

struct PhiTerm {
  int index;  ///< basis index j of u_{j,m}
  Rational coefficient;
};

/// Expansion of the first-order channel function Phi_{k,m} over u_{k-2..k+2,m}.
/// k must be n1 or n2 of `s`; terms with negative index or zero coefficient
/// are omitted. The relative sign between the lower (k-2, k-1) and upper
/// (k+1, k+2) terms is the one that solves the first-order equation; see
/// first_order_wavefunction for the assembly.
std::vector<PhiTerm> phi_expansion(unsigned k, const ParabolicState& s);

Rational e2_closed(const ParabolicState& s);

/// <psi0| z - E1 |psi1> evaluated exactly through Z integrals and phi_expansion.
Rational e2_from_integrals(const ParabolicState& s);

/// Second-order shift obtained by summing the closed-form K_{i,j} exactly as
/// it is commonly printed, K_{n1,n2} + K_{n2,n1}. Kept as a diagnostic; it does
/// not agree with e2_closed.
Rational e2_printed_k(const ParabolicState& s);

struct SecondOrderReport {
  Rational closed;
  Rational recomputed;
  Rational printed_k;
  bool consistent() const { return closed == recomputed; }
};

SecondOrderReport second_order_report(const ParabolicState& s);

StarkExpansion expansion(const ParabolicState& s);

/// E(F) truncated at `order`. Requires F >= 0 and order in {0, 1, 2}.
double stark_energy(const ParabolicState& s, double field, int order);

/// E(F) - e0.
double splitting(const ParabolicState& s, double field, int order);

/// All states with principal number n and m >= 0, ordered by (m, n2), i.e.
/// n1 descending inside each m block. Size n(n+1)/2.
std::vector<ParabolicState> enumerate_states(unsigned n);

/// Unperturbed wavefunction without the e^{i m phi} factor.
double psi0(const ParabolicState& s, double xi, double eta);

/// First-order wavefunction (per unit field) without the e^{i m phi} factor:
///   psi1 = -(n^3 A / 4) [Phi_{n1}(xi/n) u_{n2}(eta/n) - u_{n1}(xi/n) Phi_{n2}(eta/n)].
/// Satisfies (H0 - E0) psi1 = -(z - E1) psi0.
double first_order_wavefunction(const ParabolicState& s, double xi, double eta);

} // namespace stark::perturbation
