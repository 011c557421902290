// Shooting for a single parabolic channel.

#include <algorithm>
#include <cmath>
#include <limits>

#include "stark/numerov.hpp"
#include "stark/siegert.hpp"

namespace stark::siegert {

Complex channel_q(const ChannelProblem& p, Complex x);

namespace {

constexpr double kDecayTarget = 20.0;  // e^-40 admixture of the wrong solution
constexpr double kMinimumDecay = 12.0;
constexpr double kSeriesLength = 3.0;
constexpr double kRescaleAbove = 1e200;

double sign_of(Channel c) { return c == Channel::xi ? -1.0 : 1.0; }

Complex q_at(Channel ch, unsigned m, double field, Complex e, Complex beta, Complex x) {
  const double centrifugal = (static_cast<double>(m) * m - 1.0) / 4.0;
  return 0.5 * e + beta / x - centrifugal / (x * x) + sign_of(ch) * field * x / 4.0;
}

// chi(x) = x^((m+1)/2) w(x) with w the Frobenius series normalised to w(0) = 1:
//   c_{j+1} (j+1)(j+1+m) = -[beta c_j + (E/2) c_{j-1} + s (F/4) c_{j-2}]
Complex series_chi(const ShootingSetup& st, Complex e, Complex beta, double x) {
  const double s_field = sign_of(st.channel) * st.field / 4.0;
  Complex c_m2 = 0.0, c_m1 = 0.0, c = 1.0;
  Complex sum = 1.0;
  double power = 1.0;
  int small_terms = 0;
  for (int j = 0; j < 600; ++j) {
    const Complex next = -(beta * c + 0.5 * e * c_m1 + s_field * c_m2) / (double(j + 1) * double(j + 1 + st.m));
    c_m2 = c_m1;
    c_m1 = c;
    c = next;
    power *= x;
    const Complex term = c * power;
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      if (++small_terms >= 3) break;
    } else {
      small_terms = 0;
    }
  }
  return std::pow(x, 0.5 * (st.m + 1.0)) * sum;
}

struct OutwardTrace {
  Complex value;
  Complex slope;
  unsigned nodes = 0;
};

// Integrates from the origin to match_index + 1; optionally stores the values.
OutwardTrace integrate_outward(const ShootingSetup& st, Complex e, Complex beta, std::vector<Complex>* store) {
  const double h = st.step;
  const double h2 = h * h;
  const std::size_t last = st.match_index + 1;
  auto q = [&](std::size_t i) { return q_at(st.channel, st.m, st.field, e, beta, Complex(h * double(i), 0.0)); };

  if (store) store->assign(last + 1, Complex(0.0));
  unsigned nodes = 0;
  double previous_sign = 0.0;
  auto track = [&](std::size_t i, Complex y) {
    if (store) (*store)[i] = y;
    if (i > st.match_index) return;
    const double r = y.real();
    if (r == 0.0) return;
    const double sgn = r > 0.0 ? 1.0 : -1.0;
    if (previous_sign != 0.0 && sgn != previous_sign) ++nodes;
    previous_sign = sgn;
  };

  Complex y_prev = 0.0, y_cur = 0.0;
  for (std::size_t i = 1; i <= st.series_points; ++i) {
    y_prev = y_cur;
    y_cur = series_chi(st, e, beta, h * double(i));
    track(i, y_cur);
  }
  Complex q_prev = q(st.series_points - 1), q_cur = q(st.series_points);
  Complex y_before_match = 0.0, q_before_match = 0.0;
  for (std::size_t i = st.series_points; i < last; ++i) {
    const Complex q_next = q(i + 1);
    const Complex y_next = numerov::step(y_prev, y_cur, q_prev, q_cur, q_next, h2);
    if (i + 1 == st.match_index) {
      y_before_match = y_cur;
      q_before_match = q_cur;
    }
    y_prev = y_cur;
    y_cur = y_next;
    q_prev = q_cur;
    q_cur = q_next;
    track(i + 1, y_cur);
  }
  // y_prev is at match_index, y_cur at match_index + 1.
  const Complex slope = numerov::derivative(y_before_match, y_cur, q_before_match, q_cur, h);
  return {y_prev, slope, nodes};
}

struct InwardTrace {
  Complex value;
  Complex slope;  // d chi / dx at x_match
  double x_end = 0.0;
};

InwardTrace integrate_inward(const ShootingSetup& st, Complex e, Complex beta) {
  const double h = st.step;
  const double h2 = h * h;
  const Complex rot = std::polar(1.0, st.theta);
  const Complex rot2 = rot * rot;
  const double x0 = st.x_match();
  auto q = [&](long j) { return rot2 * q_at(st.channel, st.m, st.field, e, beta, x0 + rot * (h * double(j))); };

  const long end = static_cast<long>(st.inward_points);
  Complex y_next = 0.0;      // at j + 1
  Complex y_cur = 1e-30;     // at j
  Complex q_next = q(end), q_cur = q(end - 1);
  Complex y_plus = 0.0, q_plus = 0.0;
  for (long j = end - 1; j > -1; --j) {
    const Complex q_prev = q(j - 1);
    Complex y_prev = numerov::step(y_next, y_cur, q_next, q_cur, q_prev, h2);
    if (j == 1) {
      y_plus = y_cur;
      q_plus = q_cur;
    }
    y_next = y_cur;
    y_cur = y_prev;
    q_next = q_cur;
    q_cur = q_prev;
    if (std::abs(y_cur) > kRescaleAbove) {
      y_cur /= kRescaleAbove;
      y_next /= kRescaleAbove;
      y_plus /= kRescaleAbove;
    }
  }
  // y_next at j = 0, y_cur at j = -1.
  const Complex slope_s = numerov::derivative(y_cur, y_plus, q_cur, q_plus, h);
  return {y_next, slope_s / rot, std::abs(x0 + rot * (h * double(end)))};
}

// The field pulls the xi turning point inwards: last sign change of Re Q below
// the Coulomb one.
double xi_turning_point(const ChannelProblem& p, double coulomb) {
  auto re_q = [&](double x) { return channel_q(p, x).real(); };
  const int samples = 400;
  double lo = -1.0;
  for (int i = samples; i >= 1; --i) {
    const double x = coulomb * i / samples;
    if (re_q(x) >= 0.0) {
      lo = x;
      break;
    }
  }
  if (lo < 0.0) return coulomb;
  double hi = std::min(coulomb, lo + coulomb / samples);
  if (re_q(hi) >= 0.0) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (re_q(mid) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

} // namespace

Complex channel_q(const ChannelProblem& p, Complex x) { return q_at(p.channel, p.m, p.field, p.energy, p.beta, x); }

double coulomb_turning_point(Complex energy, Complex beta, unsigned m) {
  const double e = energy.real();
  const double b = beta.real();
  const double c = (static_cast<double>(m) * m - 1.0) / 4.0;
  const double scale = 1.0 / std::sqrt(-2.0 * e);
  // (e/2) x^2 + b x - c = 0, larger root
  const double disc = b * b + 2.0 * e * c;
  if (!(e < 0.0) || disc < 0.0) return scale;
  const double root = (-b - std::sqrt(disc)) / e;
  return root > 0.0 ? root : scale;
}

double barrier_position(Complex beta2, double field) {
  if (!(field > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(std::max(beta2.real(), 1e-3) / field);
}

ShootingSetup make_setup(const ChannelProblem& ref, BoundaryMode mode, double theta) {
  if (!(ref.grid.step > 0.0) || !(ref.grid.x_max > 0.0)) throw std::invalid_argument("grid step and x_max must be positive");
  if (!(ref.energy.real() < 0.0)) throw std::invalid_argument("reference energy must have a negative real part");
  ShootingSetup st;
  st.channel = ref.channel;
  st.m = ref.m;
  st.field = ref.field;
  st.step = ref.grid.step;
  st.mode = mode;
  st.theta = (ref.channel == Channel::eta && mode == BoundaryMode::outgoing) ? theta : 0.0;
  const double h = st.step;

  if (st.mode == BoundaryMode::outgoing && ref.channel == Channel::eta && ref.grid.x_max < barrier_position(ref.beta, ref.field))
    throw SolverError(ErrorKind::barrier_not_resolved, "domain ends before the eta-channel barrier top");

  double x_turn = coulomb_turning_point(ref.energy, ref.beta, ref.m);
  if (ref.channel == Channel::xi && ref.field > 0.0) x_turn = xi_turning_point(ref, x_turn);
  else if (ref.channel == Channel::eta && ref.field > 0.0) x_turn = std::min(x_turn, 0.8 * barrier_position(ref.beta, ref.field));
  st.match_index = std::max<std::size_t>(static_cast<std::size_t>(std::lround(x_turn / h)), 12);

  // Series region: a fixed distance, since near x = 0 Numerov loses orders
  // (chi ~ x^((m+1)/2)); short enough that the series does not cancel badly.
  const double x_series = std::min(kSeriesLength, 0.5 * x_turn);
  st.series_points = std::clamp<std::size_t>(static_cast<std::size_t>(x_series / h), 3, st.match_index - 4);

  // Inward path: long enough for the decaying solution to dominate.
  const Complex rot = std::polar(1.0, st.theta);
  const std::size_t cap = static_cast<std::size_t>(4.0 * ref.grid.x_max / h) + 16;
  double decay = 0.0;
  bool was_forbidden = false;
  std::size_t j = 0;
  for (; j < cap; ++j) {
    const Complex x = st.x_match() + rot * (h * double(j));
    const Complex q = channel_q(ref, x);
    if (st.theta == 0.0 && ref.channel == Channel::eta && ref.field > 0.0) {
      // Decaying mode with a field: stop at the outer turning point at the latest.
      if (q.real() < 0.0) was_forbidden = true;
      else if (was_forbidden && x.real() > barrier_position(ref.beta, ref.field)) break;
    }
    decay += h * std::abs((rot * std::sqrt(q)).imag());
    if (decay >= kDecayTarget && j > 8) break;
  }
  if (decay < kMinimumDecay && st.mode == BoundaryMode::outgoing)
    throw SolverError(ErrorKind::barrier_not_resolved, "outgoing wave not damped within the domain");
  st.inward_points = std::max<std::size_t>(j, 8);
  return st;
}

ChannelSolution shoot(const ShootingSetup& st, Complex energy, Complex beta) {
  const OutwardTrace out = integrate_outward(st, energy, beta, nullptr);
  const InwardTrace in = integrate_inward(st, energy, beta);
  const double xm = st.x_match();
  const Complex mismatch = xm * (out.slope / out.value - in.slope / in.value);
  return {mismatch, out.nodes, xm, in.x_end};
}

std::vector<Complex> outward_solution(const ShootingSetup& st, Complex energy, Complex beta) {
  std::vector<Complex> values;
  integrate_outward(st, energy, beta, &values);
  values.resize(st.match_index + 1);
  return values;
}

} // namespace stark::siegert
