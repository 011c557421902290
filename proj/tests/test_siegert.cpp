#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stark/perturbation.hpp"
#include "stark/siegert.hpp"

using namespace stark;
using namespace stark::siegert;
using perturbation::enumerate_states;

namespace {

Grid field_free_grid(unsigned n) { return default_grid({n - 1, 0, 0}, 0.0); }

double field_free_beta1(const ParabolicState& s) { return (s.n1 + (s.m + 1) / 2.0) / s.principal(); }

} // namespace

TEST_CASE("channel equations are documented") {
  const auto text = channel_equations();
  CHECK(text.find("beta1") != std::string_view::npos);
  CHECK(text.find("beta2") != std::string_view::npos);
  CHECK(to_string(ErrorKind::barrier_not_resolved) == "BarrierNotResolved");
}

TEST_CASE("xi channel, field free") {
  const auto g1 = field_free_grid(1);
  const auto g2 = field_free_grid(2);
  CHECK(std::abs(solve_xi_channel(-0.5, 0.0, 0, 0, g1).beta1 - Complex(0.5)) <= 1e-9);
  CHECK(std::abs(solve_xi_channel(-0.125, 0.0, 1, 0, g2).beta1 - Complex(0.75)) <= 1e-9);
  CHECK(std::abs(solve_xi_channel(-0.125, 0.0, 0, 1, g2).beta1 - Complex(0.5)) <= 1e-9);
  CHECK(solve_xi_channel(-0.125, 0.0, 1, 0, g2).nodes == 1);
}

TEST_CASE("eta mismatch, field free") {
  const auto g1 = field_free_grid(1);
  const auto g2 = field_free_grid(2);
  CHECK(std::abs(eta_mismatch(-0.5, 0.0, 0.5, 0, 0, g1).mismatch) <= 1e-9);
  CHECK(std::abs(eta_mismatch(-0.125, 0.0, 0.25, 0, 0, g2).mismatch) <= 1e-9);
  CHECK(std::abs(eta_mismatch(-0.5, 0.0, 0.6, 0, 0, g1).mismatch) > 1e-3);
  CHECK(std::abs(eta_mismatch(-0.125, 0.0, 0.35, 0, 0, g2).mismatch) > 1e-3);
}

TEST_CASE("outward solution behaves like sqrt(x) near the origin for m = 0") {
  ChannelProblem p{Channel::xi, -0.5, 0.0, 0.5, 0, field_free_grid(1)};
  const auto setup = make_setup(p, BoundaryMode::decaying);
  const auto chi = outward_solution(setup, -0.5, 0.5);
  REQUIRE(chi.size() > 10);
  CHECK(std::abs(chi[0]) == 0.0);
  // chi / sqrt(x) tends to a constant
  const double h = setup.step;
  const double r1 = std::abs(chi[1]) / std::sqrt(h);
  const double r2 = std::abs(chi[2]) / std::sqrt(2 * h);
  CHECK(r2 == doctest::Approx(r1).epsilon(0.05));
}

TEST_CASE("field-free exactness, n <= 3") {
  for (unsigned n = 1; n <= 3; ++n)
    for (const auto& s : enumerate_states(n)) {
      const auto sol = siegert_energy(s, 0.0);
      CHECK(sol.converged);
      CHECK(std::abs(sol.energy.real() + 0.5 / (n * n)) <= 1e-8);
      CHECK(sol.energy.imag() == 0.0);
      CHECK(std::abs(sol.beta1.real() - field_free_beta1(s)) <= 1e-8);
      CHECK(std::abs(sol.beta1 + sol.beta2 - Complex(1.0)) <= 1e-12);
      CHECK(sol.n1_found == s.n1);
      CHECK(sol.n2_found == s.n2);
      CHECK(sol.residual <= 1e-10);
    }
}

TEST_CASE("ground state at F = 0.1") {
  const auto sol = siegert_energy({0, 0, 0}, 0.1);
  CHECK(sol.converged);
  CHECK(sol.mode == BoundaryMode::outgoing);
  CHECK(sol.energy.real() == doctest::Approx(-0.5274).epsilon(2e-4));
  CHECK(sol.energy.imag() < 0.0);
  const double sigma = std::abs((-0.5225 - sol.energy.real()) / sol.energy.real()) * 100;
  CHECK(sigma < 1.0);
  CHECK(sigma > 0.9);
}

TEST_CASE("grid convergence under step halving") {
  struct Case {
    ParabolicState s;
    double field;
  };
  const std::vector<Case> cases = {{{0, 0, 0}, 0.05}, {{1, 0, 0}, 0.005}, {{0, 1, 1}, 0.001}, {{2, 1, 0}, 2e-4}};
  for (const auto& c : cases) {
    SolverOptions coarse;
    SolverOptions fine;
    fine.grid = default_grid(c.s, c.field);
    fine.grid.step /= 2;
    const auto a = siegert_energy(c.s, c.field, coarse);
    const auto b = siegert_energy(c.s, c.field, fine);
    CHECK(std::abs(a.energy.real() - b.energy.real()) <= 1e-8);
  }
}

TEST_CASE("imaginary part is never positive") {
  for (unsigned n = 1; n <= 3; ++n)
    for (const auto& s : enumerate_states(n))
      for (double f : {0.1 / std::pow(n, 4), 0.2 / std::pow(n, 4)}) {
        const auto sol = siegert_energy(s, f);
        CHECK(sol.energy.imag() <= 0.0);
      }
}

TEST_CASE("weak fields use the decaying condition") {
  const ParabolicState s{1, 0, 0};
  CHECK(weak_field_threshold(s) == doctest::Approx(1.0 / 800));
  const auto sol = siegert_energy(s, 1e-4);
  CHECK(sol.mode == BoundaryMode::decaying);
  CHECK(sol.energy.imag() == 0.0);
  const auto strong = siegert_energy(s, 0.01);
  CHECK(strong.mode == BoundaryMode::outgoing);
}

TEST_CASE("negative field maps to the mirror state") {
  const auto a = siegert_energy({1, 0, 0}, -0.004);
  const auto b = siegert_energy({0, 1, 0}, 0.004);
  CHECK(a.energy == b.energy);
}

TEST_CASE("linear slope of (1,0,0)") {
  // symmetric difference through the mirror state cancels the F^2 term
  const double f = 1e-4;
  const auto up = siegert_energy({1, 0, 0}, f);
  const auto down = siegert_energy({1, 0, 0}, -f);
  const double slope = (up.energy.real() - down.energy.real()) / (2 * f);
  CHECK(std::abs(slope - 3.0) <= 1e-4);
  const auto zero = siegert_energy({1, 0, 0}, 0.0);
  CHECK(zero.energy.real() == doctest::Approx(-0.125).epsilon(1e-9));
}

TEST_CASE("perturbative consistency of the quadratic coefficient") {
  for (unsigned n = 1; n <= 4; ++n)
    for (const auto& s : enumerate_states(n)) {
      const double f = 1e-3 / std::pow(n, 3);
      const auto sol = siegert_energy(s, f);
      REQUIRE(sol.mode == BoundaryMode::decaying);
      const double e0 = to_double(perturbation::e0(s));
      const double e1 = to_double(perturbation::e1_closed(s));
      const double e2 = to_double(perturbation::e2_closed(s));
      const double ratio = (sol.energy.real() - e0 - e1 * f) / (f * f);
      CHECK(std::abs(ratio - e2) <= 0.01 * std::abs(e2));
    }
}

TEST_CASE("energy scans") {
  const std::vector<double> zero = {0.0};
  const auto single = energy_scan({0, 0, 0}, zero);
  REQUIRE(single.size() == 1);
  REQUIRE(single[0].solution);
  CHECK(single[0].solution->energy.real() == doctest::Approx(-0.5).epsilon(1e-9));

  std::vector<double> fields;
  for (int i = 0; i <= 10; ++i) fields.push_back(0.01 * i);
  const auto scan = energy_scan({0, 0, 0}, fields);
  REQUIRE(scan.size() == 11);
  for (std::size_t i = 1; i < scan.size(); ++i) {
    REQUIRE(scan[i].solution);
    CHECK(scan[i].solution->energy.real() < scan[i - 1].solution->energy.real());
  }

  const std::vector<double> small = {0.0, 2e-4, 4e-4, 6e-4};
  const auto up = energy_scan({1, 0, 0}, small);
  const auto down = energy_scan({0, 1, 0}, small);
  for (std::size_t i = 1; i < small.size(); ++i) {
    const double du = up[i].solution->energy.real() - up[0].solution->energy.real();
    const double dd = down[i].solution->energy.real() - down[0].solution->energy.real();
    CHECK(du > 0.0);
    CHECK(dd < du);
  }

  const std::vector<double> unsorted = {0.01, 0.0};
  CHECK_THROWS_AS(energy_scan({0, 0, 0}, unsorted), std::invalid_argument);
}

TEST_CASE("scan records failures per point") {
  SolverOptions opts;
  opts.grid = {0.01, 6.0};
  const std::vector<double> fields = {0.0, 0.03};
  const auto scan = energy_scan({0, 0, 0}, fields, opts);
  REQUIRE(scan.size() == 2);
  CHECK(scan[0].solution.has_value());
  REQUIRE(scan[1].error.has_value());
  CHECK(*scan[1].error == ErrorKind::barrier_not_resolved);
  CHECK_FALSE(scan[1].message.empty());
}

TEST_CASE("barrier not resolved") {
  SolverOptions opts;
  opts.grid = {0.01, 6.0};
  try {
    siegert_energy({0, 0, 0}, 0.03, opts);
    FAIL("expected an exception");
  } catch (const SolverError& e) {
    CHECK(e.kind() == ErrorKind::barrier_not_resolved);
  }
  CHECK(barrier_position(0.5, 0.0) == INFINITY);
  CHECK(barrier_position(0.5, 0.02) == doctest::Approx(10.0));
}

TEST_CASE("iteration cap") {
  SolverOptions opts;
  opts.max_iter = 1;
  opts.initial_energy = Complex(-0.45);
  CHECK_THROWS_AS(siegert_energy({0, 0, 0}, 0.0, opts), SolverError);
}

TEST_CASE("grid defaults") {
  const auto g = default_grid({1, 1, 1}, 0.0);
  CHECK(g.step == doctest::Approx(0.04));
  CHECK(g.x_max == doctest::Approx(480.0));
  const auto gf = default_grid({0, 0, 0}, 0.1);
  CHECK(gf.x_max >= 30.0);
  CHECK(coulomb_turning_point(-0.5, 0.5, 1) == doctest::Approx(2.0));
}

namespace {

// Known third- and fourth-order Stark coefficients of hydrogen, d = n1 - n2.
double e3_known(const ParabolicState& s) {
  const double n = s.principal(), d = double(s.n1) - double(s.n2), m = s.m;
  return 3.0 / 32 * std::pow(n, 7) * d * (23 * n * n - d * d + 11 * m * m + 39);
}

double e4_known(const ParabolicState& s) {
  const double n = s.principal(), d = double(s.n1) - double(s.n2), m = s.m;
  return -std::pow(n, 10) / 1024 *
         (5487 * std::pow(n, 4) + 35182 * n * n - 1134 * m * m * d * d + 1806 * n * n * d * d - 3402 * n * n * m * m +
          147 * std::pow(d, 4) - 549 * std::pow(m, 4) + 5754 * d * d - 8622 * m * m + 16211);
}

} // namespace

TEST_CASE("ground-state residual follows the fourth-order term") {
  // E3 = 0 here, so E_pert - E is E4 F^4 + E6 F^6 (E6 = -2512779/512)
  const ParabolicState s{0, 0, 0};
  CHECK(e4_known(s) == doctest::Approx(-3555.0 / 64));
  for (double f : {2.5e-3, 5e-3, 1e-2}) {
    SolverOptions o;
    o.grid = default_grid(s, f);
    o.grid.step /= 4;
    const auto sol = siegert_energy(s, f, o);
    const double resid = perturbation::stark_energy(s, f, 2) - sol.energy.real();
    const double series = -(e4_known(s) * std::pow(f, 4) - 2512779.0 / 512 * std::pow(f, 6));
    CHECK(resid == doctest::Approx(series).epsilon(1e-3));
  }
}

TEST_CASE("deviation of (3,2,0) turns over inside the default range") {
  // E3 F^3 > 0 and E4 F^4 < 0 compete; the residual peaks near 3 E3 / (4 |E4|)
  const ParabolicState s{3, 2, 0};
  const double fmax = 1.0 / (20.0 * std::pow(6.0, 4));
  std::vector<double> sigma;
  for (int i = 1; i <= 20; ++i) {
    const double f = fmax * i / 20;
    const auto sol = siegert_energy(s, f);
    const double pert = perturbation::stark_energy(s, f, 2);
    const double resid = pert - sol.energy.real();
    const double series = -(e3_known(s) * std::pow(f, 3) + e4_known(s) * std::pow(f, 4));
    CHECK(resid == doctest::Approx(series).epsilon(0.08));
    sigma.push_back(std::abs(resid / sol.energy.real()));
  }
  const auto peak = std::max_element(sigma.begin(), sigma.end()) - sigma.begin();
  CHECK(peak > 0);
  CHECK(peak < 19);
  CHECK(sigma.back() < sigma[peak]);
}
