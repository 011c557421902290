#pragma once

// Associated Laguerre polynomials L_k^m in the generating-function convention
//
//   (1 - t)^-(m+1) exp(-x t / (1 - t)) = sum_k L_k^m(x) t^k,
//
// so that L_k^m(0) = C(k+m, k), together with the parabolic basis functions
// u_{k,m}(x) = x^(m/2) exp(-x/2) L_k^m(x).

#include <cstddef>
#include <vector>

#include "stark/rational.hpp"

namespace stark::laguerre {

/// Polynomial with exact rational coefficients; coeffs()[i] multiplies x^i.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class RationalPolynomial {
public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; zero for the zero polynomial.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  const Rational& leading() const;

  Rational operator()(const Rational& x) const;
  /// Horner evaluation in double precision.
  double evaluate(double x) const;

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Exact coefficients of L_k^m.
RationalPolynomial laguerre_coeffs(unsigned k, unsigned m);

/// L_k^m(x) by the forward three-term recurrence.
double laguerre_eval(unsigned k, unsigned m, double x);

/// u_{k,m}(x); requires x >= 0.
double u_eval(unsigned k, unsigned m, double x);

/// The basis function u_{k,m} as a value type.
struct BasisFunction {
  unsigned k = 0;
  unsigned m = 0;

  double operator()(double x) const { return u_eval(k, m, x); }
  /// Integral of u^2 over (0, inf): (k+m)!/k!.
  Rational norm() const;
  /// Right end of the interval used for node counting, 4(k+m+1).
  double node_window() const { return 4.0 * (k + m + 1); }
  /// Sign changes of u on a uniform grid of 64(k+1) points over (0, node_window()).
  unsigned node_count() const;
};

struct PlotSample {
  double x;
  double density;  ///< |u_{k,m}(x)|^2 / ((k+m)!/k!)
};

/// Uniform samples of the unit-normalised density |u_{k,m}|^2 on [0, x_max].
std::vector<PlotSample> u_plot_samples(unsigned k, unsigned m, double x_max, std::size_t n_points);

} // namespace stark::laguerre
