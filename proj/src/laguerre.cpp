#include "stark/laguerre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stark::laguerre {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& RationalPolynomial::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(c));
}

RationalPolynomial laguerre_coeffs(unsigned k, unsigned m) {
  // L_k^m(x) = sum_i (-1)^i C(k+m, k-i) x^i / i!
  std::vector<Rational> c(k + 1);
  for (unsigned i = 0; i <= k; ++i) {
    Rational term(binomial(k + m, k - i), factorial(i));
    c[i] = (i % 2 == 0) ? term : Rational(-term);
  }
  return RationalPolynomial(std::move(c));
}

double laguerre_eval(unsigned k, unsigned m, double x) {
  // (j+1) L_{j+1} = (2j + m + 1 - x) L_j - (j + m) L_{j-1}
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 1.0 + m - x;
  for (unsigned j = 1; j < k; ++j) {
    const double next = ((2.0 * j + m + 1.0 - x) * cur - (j + m) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double u_eval(unsigned k, unsigned m, double x) {
  if (!(x >= 0.0)) throw std::invalid_argument("u_eval: x must be nonnegative");
  const double envelope = (m == 0) ? std::exp(-0.5 * x) : std::exp(0.5 * m * std::log(x) - 0.5 * x);
  if (envelope == 0.0) return 0.0;
  return envelope * laguerre_eval(k, m, x);
}

Rational BasisFunction::norm() const { return Rational(factorial_ratio(k + m, k)); }

unsigned BasisFunction::node_count() const {
  const std::size_t points = 64 * (static_cast<std::size_t>(k) + 1);
  const double dx = node_window() / static_cast<double>(points);
  unsigned changes = 0;
  double last = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    const double v = u_eval(k, m, dx * static_cast<double>(i));
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
    last = v;
  }
  return changes;
}

std::vector<PlotSample> u_plot_samples(unsigned k, unsigned m, double x_max, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("u_plot_samples: need at least two points");
  if (!(x_max > 0.0)) throw std::invalid_argument("u_plot_samples: x_max must be positive");
  const double inv_norm = 1.0 / to_double(BasisFunction{k, m}.norm());
  std::vector<PlotSample> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double u = u_eval(k, m, x);
    out.push_back({x, u * u * inv_norm});
  }
  return out;
}

} // namespace stark::laguerre
