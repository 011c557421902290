#pragma once

#include <complex>

namespace stark::numerov {

using Complex = std::complex<double>;

/// One Numerov step for y'' = -q y on a uniform grid with spacing h (h2 = h^2):
/// returns y_{i+1} from y_{i-1}, y_i.
inline Complex step(Complex y_prev, Complex y_cur, Complex q_prev, Complex q_cur, Complex q_next, double h2) {
  const Complex a_prev = 1.0 + h2 * q_prev / 12.0;
  const Complex a_cur = 1.0 - 5.0 * h2 * q_cur / 12.0;
  const Complex a_next = 1.0 + h2 * q_next / 12.0;
  return (2.0 * a_cur * y_cur - a_prev * y_prev) / a_next;
}

/// y'(x_i) from the neighbouring values, O(h^4).
inline Complex derivative(Complex y_prev, Complex y_next, Complex q_prev, Complex q_next, double h) {
  const double h2 = h * h;
  return ((1.0 + h2 * q_next / 6.0) * y_next - (1.0 + h2 * q_prev / 6.0) * y_prev) / (2.0 * h);
}

} // namespace stark::numerov
