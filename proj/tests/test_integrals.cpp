#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stark/integrals.hpp"
#include "stark/laguerre.hpp"

using namespace stark;
using namespace stark::integrals;

namespace {

// Term-by-term integration of the product polynomial with int x^p e^-x = p!.
Rational z_by_expansion(const ZQuery& q) {
  const auto prod = laguerre::laguerre_coeffs(q.k, q.m) * laguerre::laguerre_coeffs(q.kprime, q.m);
  Rational acc = 0;
  for (std::size_t i = 0; i < prod.coeffs().size(); ++i)
    acc += prod.coeffs()[i] * factorial(q.alpha + q.m + static_cast<unsigned>(i));
  return acc;
}

} // namespace

TEST_CASE("closed form examples") {
  CHECK(z_closed_form({2, 0, 0, 0}) == 2);
  CHECK(z_closed_form({1, 1, 2, 0}) == -2);
  CHECK(z_closed_form({0, 3, 3, 1}) == 4);
  CHECK(z_closed_form({1, 0, 1, 0}) == -1);
  CHECK(z_closed_form({2, 0, 3, 0}) == 0);
  CHECK(z_closed_form({0, 4, 5, 2}) == 0);
}

TEST_CASE("closed form equals term-by-term expansion") {
  for (unsigned alpha = 0; alpha <= 4; ++alpha)
    for (unsigned m = 0; m <= 4; ++m)
      for (unsigned k = 0; k <= 7; ++k)
        for (unsigned kp = 0; kp <= 7; ++kp) {
          const ZQuery q{alpha, k, kp, m};
          CHECK(z_closed_form(q) == z_by_expansion(q));
        }
}

TEST_CASE("quadrature examples") {
  CHECK(z_quadrature({0, 3, 3, 1}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(z_quadrature({1, 0, 1, 0}) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(z_quadrature({2, 0, 3, 0})) <= 1e-12);
  CHECK(quadrature_order({0, 3, 3, 1}) >= 5);
}

TEST_CASE("quadrature agrees with closed form on a sample") {
  for (unsigned alpha : {0u, 2u, 4u})
    for (unsigned m : {0u, 3u, 6u})
      for (unsigned k = 0; k <= 12; k += 3)
        for (unsigned kp = 0; kp <= 12; kp += 2) {
          const ZQuery q{alpha, k, kp, m};
          const double exact = to_double(z_closed_form(q));
          const double quad = z_quadrature(q);
          if (exact == 0.0) CHECK(std::abs(quad) <= 1e-12);
          else CHECK(std::abs(quad - exact) <= 1e-9 * std::abs(exact));
        }
}

TEST_CASE("symmetry in k and k'") {
  for (unsigned alpha = 0; alpha <= 4; ++alpha)
    for (unsigned m = 0; m <= 6; ++m)
      for (unsigned k = 0; k <= 12; ++k)
        for (unsigned kp = 0; kp <= 12; ++kp) CHECK(z_closed_form({alpha, k, kp, m}) == z_closed_form({alpha, kp, k, m}));
}

TEST_CASE("selection rule") {
  CHECK(selection_rule({0, 5, 5, 0}));
  CHECK_FALSE(selection_rule({0, 5, 6, 0}));
  CHECK(selection_rule({2, 4, 6, 0}));
  for (unsigned alpha = 0; alpha <= 4; ++alpha)
    for (unsigned m = 0; m <= 3; ++m)
      for (unsigned k = 0; k <= 12; ++k)
        for (unsigned kp = 0; kp <= 12; ++kp) {
          const ZQuery q{alpha, k, kp, m};
          if (!selection_rule(q)) CHECK(z_closed_form(q) == 0);
        }
}

TEST_CASE("alpha 0 and 1 specialisations") {
  CHECK(i2_exercise(0, 0, 0) == 1);
  CHECK(i2_exercise(1, 1, 0) == 3);
  CHECK(i2_exercise(2, 3, 5) == 0);
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned k = 0; k <= 12; ++k)
      for (unsigned kp = 0; kp <= 12; ++kp) {
        const Rational diag = k == kp ? Rational(factorial_ratio(k + m, k)) : Rational(0);
        CHECK(z_closed_form({0, k, kp, m}) == diag);
        if (k == kp) CHECK(z_closed_form({1, k, kp, m}) == i2_exercise(k, kp, m));
        // neighbours: -(k+m+1)!/k!
        if (kp == k + 1) CHECK(z_closed_form({1, k, kp, m}) == -Rational(factorial_ratio(k + m + 1, k)));
        if (k > kp + 1 || kp > k + 1) CHECK(z_closed_form({1, k, kp, m}) == 0);
      }
}

TEST_CASE("second moment diagonal") {
  // Z(2,k,k)/Z(0,k,k) = 6k^2 + 6km + 6k + m^2 + 3m + 2
  for (unsigned m = 0; m <= 6; ++m)
    for (unsigned k = 0; k <= 12; ++k) {
      const Rational ratio = z_closed_form({2, k, k, m}) / z_closed_form({0, k, k, m});
      CHECK(ratio == Rational(6 * k * k + 6 * k * m + 6 * k + m * m + 3 * m + 2));
    }
}
