#include "stark/siegert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace stark::siegert {

namespace {

constexpr double kSeedOffset = 1e-6;
constexpr double kImaginaryFloor = 1e-10;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double x_squared_diagonal(unsigned k, unsigned m) {
  const double kk = k, mm = m;
  return 6.0 * kk * kk + 6.0 * kk * mm + 6.0 * kk + mm * mm + 3.0 * mm + 2.0;
}

struct XiRoot {
  Complex beta;
  Complex mismatch;
  unsigned nodes = 0;
  int iterations = 0;
};

// Secant on beta for a frozen xi geometry.
XiRoot xi_root(const ShootingSetup& st, Complex energy, Complex seed) {
  Complex b0 = seed;
  Complex b1 = seed * (1.0 + 1e-5) + 1e-7;
  ChannelSolution f0 = shoot(st, energy, b0);
  ChannelSolution f1 = shoot(st, energy, b1);
  for (int it = 1; it <= 100; ++it) {
    if (std::abs(f1.mismatch) <= 1e-13) return {b1, f1.mismatch, f1.nodes, it};
    const Complex denom = f1.mismatch - f0.mismatch;
    if (denom == 0.0) break;
    Complex step = f1.mismatch * (b1 - b0) / denom;
    // keep the iteration on the branch of the seed
    const double limit = 0.25 * std::max(std::abs(b1), 0.05);
    if (std::abs(step) > limit) step *= limit / std::abs(step);
    b0 = b1;
    f0 = f1;
    b1 -= step;
    f1 = shoot(st, energy, b1);
    if (std::abs(step) <= 1e-13 * std::max(std::abs(b1), 1.0)) return {b1, f1.mismatch, f1.nodes, it};
  }
  throw SolverError(ErrorKind::no_convergence, "xi channel: secant on beta1 did not converge");
}

Complex perturbative_energy(const ParabolicState& s, double field) {
  return perturbation::stark_energy(s, field, 2);
}

} // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::node_mismatch: return "NodeMismatch";
    case ErrorKind::state_misidentified: return "StateMisidentified";
    case ErrorKind::barrier_not_resolved: return "BarrierNotResolved";
  }
  return "Unknown";
}

std::string_view to_string(BoundaryMode mode) { return mode == BoundaryMode::decaying ? "decaying" : "outgoing"; }

std::string_view channel_equations() {
  return "chi1'' + [E/2 + beta1/xi - (m^2-1)/(4 xi^2) - (F/4) xi] chi1 = 0, chi1(0) = 0, chi1 -> 0, n1 nodes\n"
         "chi2'' + [E/2 + beta2/eta - (m^2-1)/(4 eta^2) + (F/4) eta] chi2 = 0, chi2(0) = 0, outgoing, n2 nodes\n"
         "beta1 + beta2 = 1, psi = chi1 chi2 e^{i m phi} / sqrt(xi eta)\n";
}

Grid default_grid(const ParabolicState& s, double field) {
  const double n = s.principal();
  const double beta2 = (s.n2 + 0.5 * (s.m + 1.0)) / n;
  double x_max = 30.0 * n * n;
  if (field > 0.0) x_max = std::max(x_max, 3.0 * barrier_position(beta2, field));
  return {0.01 * n, x_max};
}

Complex beta_estimate(Channel channel, Complex energy, double field, unsigned k, unsigned m) {
  const Complex nu = 1.0 / std::sqrt(-2.0 * energy);
  const Complex zeroth = (k + 0.5 * (m + 1.0)) / nu;
  const Complex first = 0.25 * field * nu * nu * x_squared_diagonal(k, m);
  return channel == Channel::xi ? zeroth + first : zeroth - first;
}

XiSolution solve_xi_channel(Complex energy, double field, unsigned n1, unsigned m, const Grid& grid) {
  if (!(field >= 0.0)) throw std::invalid_argument("solve_xi_channel: field must be nonnegative");
  const Complex seed = beta_estimate(Channel::xi, energy, field, n1, m);
  const ShootingSetup st = make_setup({Channel::xi, energy, field, seed, m, grid}, BoundaryMode::decaying);
  const XiRoot r = xi_root(st, energy, seed);
  if (r.nodes != n1)
    throw SolverError(ErrorKind::node_mismatch, "xi channel: root has " + std::to_string(r.nodes) + " nodes, expected " +
                                                    std::to_string(n1));
  return {r.beta, std::abs(r.mismatch), r.nodes, r.iterations};
}

EtaResult eta_mismatch(Complex energy, double field, Complex beta2, unsigned n2, unsigned m, const Grid& grid,
                       std::optional<BoundaryMode> mode) {
  if (!(field >= 0.0)) throw std::invalid_argument("eta_mismatch: field must be nonnegative");
  const BoundaryMode bm = mode.value_or(field > 0.0 ? BoundaryMode::outgoing : BoundaryMode::decaying);
  const ShootingSetup st = make_setup({Channel::eta, energy, field, beta2, m, grid}, bm);
  const ChannelSolution sol = shoot(st, energy, beta2);
  return {sol.mismatch, sol.nodes, sol.nodes == n2};
}

double weak_field_threshold(const ParabolicState& s) {
  const double n = s.principal();
  return 1.0 / (50.0 * n * n * n * n);
}

SiegertSolution siegert_energy(const ParabolicState& requested, double field, const SolverOptions& opts) {
  if (std::isnan(field)) throw std::invalid_argument("siegert_energy: field is NaN");
  if (field < 0.0) {
    SiegertSolution mirrored = siegert_energy(requested.swapped(), -field, opts);
    std::swap(mirrored.beta1, mirrored.beta2);
    std::swap(mirrored.n1_found, mirrored.n2_found);
    return mirrored;
  }
  const ParabolicState& s = requested;
  Grid grid = default_grid(s, field);
  if (opts.grid.step > 0.0) grid.step = opts.grid.step;
  if (opts.grid.x_max > 0.0) grid.x_max = opts.grid.x_max;
  const double threshold = opts.weak_field_threshold >= 0.0 ? opts.weak_field_threshold : weak_field_threshold(s);
  const BoundaryMode mode = (field > 0.0 && field >= threshold) ? BoundaryMode::outgoing : BoundaryMode::decaying;

  const Complex seed = opts.initial_energy.value_or(perturbative_energy(s, field));
  if (!(seed.real() < 0.0)) throw SolverError(ErrorKind::no_convergence, "initial energy is not below threshold");
  const Complex beta1_ref = beta_estimate(Channel::xi, seed, field, s.n1, s.m);
  const ShootingSetup xi_setup = make_setup({Channel::xi, seed, field, beta1_ref, s.m, grid}, BoundaryMode::decaying);
  const ShootingSetup eta_setup =
      make_setup({Channel::eta, seed, field, 1.0 - beta1_ref, s.m, grid}, mode, opts.theta);

  // beta1(E) follows the estimate's E dependence from the last root.
  Complex last_beta = beta1_ref;
  Complex last_estimate = beta1_ref;
  struct Eval {
    Complex mismatch;
    Complex beta1;
    unsigned xi_nodes = 0;
    unsigned eta_nodes = 0;
  };
  auto evaluate = [&](Complex e) {
    const Complex estimate = beta_estimate(Channel::xi, e, field, s.n1, s.m);
    const XiRoot xr = xi_root(xi_setup, e, last_beta + (estimate - last_estimate));
    last_beta = xr.beta;
    last_estimate = estimate;
    const ChannelSolution es = shoot(eta_setup, e, 1.0 - xr.beta);
    return Eval{es.mismatch, xr.beta, xr.nodes, es.nodes};
  };

  Complex e0 = seed;
  Complex e1 = seed * (1.0 + kSeedOffset);
  Eval f0 = evaluate(e0);
  Eval f1 = evaluate(e1);
  SiegertSolution out;
  out.mode = mode;
  int it = 0;
  bool converged = std::abs(f1.mismatch) <= opts.tol;
  while (!converged && it < opts.max_iter) {
    ++it;
    const Complex denom = f1.mismatch - f0.mismatch;
    if (denom == 0.0) break;
    Complex step = f1.mismatch * (e1 - e0) / denom;
    const double limit = 0.2 * std::abs(e1);
    if (std::abs(step) > limit) step *= limit / std::abs(step);
    e0 = e1;
    f0 = f1;
    e1 -= step;
    if (mode == BoundaryMode::decaying) e1 = e1.real();
    if (!(e1.real() < 0.0)) break;
    f1 = evaluate(e1);
    converged = std::abs(f1.mismatch) <= opts.tol;
  }
  if (!converged)
    throw SolverError(ErrorKind::no_convergence,
                      "energy secant did not converge (|mismatch| = " + sci(std::abs(f1.mismatch)) + ")");

  // A few more steps while the mismatch keeps dropping.
  for (int extra = 0; extra < 3; ++extra) {
    const Complex denom = f1.mismatch - f0.mismatch;
    if (denom == 0.0) break;
    Complex e2 = e1 - f1.mismatch * (e1 - e0) / denom;
    if (mode == BoundaryMode::decaying) e2 = e2.real();
    const Eval f2 = evaluate(e2);
    if (!(std::abs(f2.mismatch) < std::abs(f1.mismatch))) break;
    e0 = e1;
    f0 = f1;
    e1 = e2;
    f1 = f2;
  }

  // Energy uncertainty implied by the remaining mismatch and by the O(h^4)
  // discretisation (about 1e-10 relative on the default grid); a positive
  // Im E inside it is a width below resolution.
  const Complex slope = (f1.mismatch - f0.mismatch) / (e1 - e0);
  const double noise = slope != 0.0 ? std::abs(f1.mismatch / slope) : 0.0;
  out.energy = e1;
  if (mode == BoundaryMode::decaying ||
      (out.energy.imag() > 0.0 && out.energy.imag() <= std::max(10.0 * noise, kImaginaryFloor * std::abs(out.energy))))
    out.energy = out.energy.real();
  out.beta1 = f1.beta1;
  out.beta2 = 1.0 - f1.beta1;
  out.iterations = it;
  out.residual = std::abs(f1.mismatch);
  out.converged = true;
  out.n1_found = f1.xi_nodes;
  out.n2_found = f1.eta_nodes;
  if (out.n1_found != s.n1 || out.n2_found != s.n2)
    throw SolverError(ErrorKind::state_misidentified,
                      "converged to nodes (" + std::to_string(out.n1_found) + "," + std::to_string(out.n2_found) +
                          "), requested (" + std::to_string(s.n1) + "," + std::to_string(s.n2) + ")");
  if (out.energy.imag() > 0.0)
    throw SolverError(ErrorKind::no_convergence, "converged to a growing (Im E > 0) solution, Im E = " + sci(out.energy.imag() / std::abs(out.energy)));
  return out;
}

std::vector<ScanPoint> energy_scan(const ParabolicState& s, std::span<const double> fields, const SolverOptions& opts) {
  if (!std::is_sorted(fields.begin(), fields.end())) throw std::invalid_argument("energy_scan: fields must be ascending");
  std::vector<ScanPoint> out;
  out.reserve(fields.size());
  std::optional<std::pair<double, Complex>> previous;
  for (double f : fields) {
    ScanPoint p;
    p.field = f;
    SolverOptions local = opts;
    if (previous && !opts.initial_energy) {
      const Complex increment = perturbative_energy(s, std::abs(f)) - perturbative_energy(s, std::abs(previous->first));
      local.initial_energy = previous->second + increment;
    }
    try {
      p.solution = siegert_energy(s, f, local);
      previous = std::make_pair(f, p.solution->energy);
    } catch (const SolverError& e) {
      p.error = e.kind();
      p.message = e.what();
    } catch (const std::exception& e) {
      p.error = ErrorKind::no_convergence;
      p.message = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

} // namespace stark::siegert
