#pragma once

// Numerical reference energies for hydrogen in a static field F along z.
//
// In parabolic coordinates the problem separates into two channels. With
// chi(x) = sqrt(x) f(x),
//
//   chi1'' + [E/2 + beta1/xi  - (m^2-1)/(4 xi^2)  - F xi/4 ] chi1 = 0,
//   chi2'' + [E/2 + beta2/eta - (m^2-1)/(4 eta^2) + F eta/4] chi2 = 0,
//
// with beta1 + beta2 = 1. chi1 vanishes at both ends and has n1 nodes. chi2
// vanishes at the origin, has n2 nodes inside the outer Coulomb turning point
// and is an outgoing wave beyond the barrier. The outgoing condition is imposed
// by exterior complex scaling: the inward solution is integrated along
// eta = eta_match + s e^{i theta}, on which the outgoing wave decays.
//
// Each channel is shot with Numerov: outward from a Frobenius series near the
// origin, inward from a point where the decaying solution is negligible, and
// matched through the logarithmic derivative at the outer classical turning
// point of the Coulomb part.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stark/perturbation.hpp"

namespace stark::siegert {

using Complex = std::complex<double>;
using perturbation::ParabolicState;

enum class Channel { xi, eta };

/// decaying: chi -> 0 along the real axis. outgoing: Siegert condition.
enum class BoundaryMode { decaying, outgoing };

enum class ErrorKind { no_convergence, node_mismatch, state_misidentified, barrier_not_resolved };

class SolverError : public std::runtime_error {
public:
  SolverError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

std::string_view to_string(ErrorKind kind);
std::string_view to_string(BoundaryMode mode);

/// The separated equations above, as text.
std::string_view channel_equations();

struct Grid {
  double step = 0.0;   ///< uniform Numerov step (a.u.)
  double x_max = 0.0;  ///< domain size (a.u.)
};

/// h = 0.01 n, x_max = max(30 n^2, 3 eta_b) with eta_b from the field-free beta2.
Grid default_grid(const ParabolicState& s, double field);

struct ChannelProblem {
  Channel channel = Channel::xi;
  Complex energy;
  double field = 0.0;
  Complex beta;
  unsigned m = 0;
  Grid grid;
};

/// Bracket of the channel equation, Q(x) in chi'' + Q chi = 0.
Complex channel_q(const ChannelProblem& p, Complex x);

/// Outer root of E/2 + beta/x - (m^2-1)/(4x^2) = 0 (real parts), or the
/// length scale 1/sqrt(-2E) when there is none.
double coulomb_turning_point(Complex energy, Complex beta, unsigned m);

/// Location of the eta-channel barrier top, 2 sqrt(Re beta2 / F); infinite at F = 0.
double barrier_position(Complex beta2, double field);

/// Geometry of one shooting problem, frozen so that the mismatch is a smooth
/// function of (E, beta) during root searches.
struct ShootingSetup {
  Channel channel = Channel::xi;
  unsigned m = 0;
  double field = 0.0;
  double step = 0.0;
  std::size_t series_points = 0;  ///< grid points taken from the Frobenius series
  std::size_t match_index = 0;    ///< x_match = match_index * step
  std::size_t inward_points = 0;  ///< length of the inward path in steps
  double theta = 0.0;             ///< rotation angle of the inward path
  BoundaryMode mode = BoundaryMode::decaying;

  double x_match() const { return static_cast<double>(match_index) * step; }
};

/// Builds the geometry around a reference (E, beta). Throws SolverError
/// (barrier_not_resolved) when an outgoing eta problem does not reach past
/// the barrier within grid.x_max.
ShootingSetup make_setup(const ChannelProblem& reference, BoundaryMode mode, double theta = 0.3);

struct ChannelSolution {
  Complex mismatch;     ///< x_match (chi_out'/chi_out - chi_in'/chi_in)
  unsigned nodes = 0;   ///< sign changes of Re chi_out on (0, x_match)
  double x_match = 0.0;
  double x_end = 0.0;   ///< |x| at the far end of the inward path
};

ChannelSolution shoot(const ShootingSetup& setup, Complex energy, Complex beta);

/// Outward channel function on [0, x_match], unnormalised (for plotting and tests).
std::vector<Complex> outward_solution(const ShootingSetup& setup, Complex energy, Complex beta);

struct XiSolution {
  Complex beta1;
  double residual = 0.0;
  unsigned nodes = 0;
  int iterations = 0;
};

/// beta1 such that the xi channel at energy E has a solution with n1 nodes.
/// Throws SolverError: no_convergence, node_mismatch.
XiSolution solve_xi_channel(Complex energy, double field, unsigned n1, unsigned m, const Grid& grid);

/// Field-free and first-order estimate of beta for channel number k at energy E.
Complex beta_estimate(Channel channel, Complex energy, double field, unsigned k, unsigned m);

struct EtaResult {
  Complex mismatch;
  unsigned nodes = 0;
  bool nodes_match = false;
};

/// Mismatch of the eta channel at (E, beta2). Defaults to the outgoing
/// condition for F > 0 and the decaying one at F = 0.
EtaResult eta_mismatch(Complex energy, double field, Complex beta2, unsigned n2, unsigned m, const Grid& grid,
                       std::optional<BoundaryMode> mode = std::nullopt);

struct SolverOptions {
  double tol = 1e-10;                 ///< on |mismatch|
  int max_iter = 100;
  Grid grid{};                        ///< fields <= 0 come from default_grid
  double weak_field_threshold = -1.0; ///< negative: 1/(50 n^4)
  double theta = 0.3;                 ///< complex-scaling angle (rad)
  std::optional<Complex> initial_energy;  ///< seed; defaults to the second-order estimate
};

struct SiegertSolution {
  Complex energy;
  Complex beta1;
  Complex beta2;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  unsigned n1_found = 0;
  unsigned n2_found = 0;
  BoundaryMode mode = BoundaryMode::decaying;
};

/// Weak-field threshold 1/(50 n^4) below which the decaying condition is used.
double weak_field_threshold(const ParabolicState& s);

/// Complex energy of the state at field F. A negative F is mapped to the
/// mirror state at |F|. Throws SolverError: no_convergence, state_misidentified,
/// node_mismatch, barrier_not_resolved.
SiegertSolution siegert_energy(const ParabolicState& s, double field, const SolverOptions& opts = {});

struct ScanPoint {
  double field = 0.0;
  std::optional<SiegertSolution> solution;
  std::optional<ErrorKind> error;
  std::string message;
};

/// Sequential warm-started scan over ascending fields; failures are recorded
/// per point.
std::vector<ScanPoint> energy_scan(const ParabolicState& s, std::span<const double> fields,
                                   const SolverOptions& opts = {});

} // namespace stark::siegert
