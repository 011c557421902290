#pragma once

// Z(alpha, k, k') = int_0^inf x^alpha u_{k,m}(x) u_{k',m}(x) dx
//                 = int_0^inf x^(alpha+m) e^-x L_k^m(x) L_{k'}^m(x) dx

#include "stark/rational.hpp"

namespace stark::integrals {

struct ZQuery {
  unsigned alpha = 0;  ///< monomial power
  unsigned k = 0;
  unsigned kprime = 0;
  unsigned m = 0;      ///< shared upper index
};

/// Closed form: sum over i, j <= alpha of
/// (-1)^(i+j) C(alpha,i) C(alpha,j) (m+alpha+k-i)!/(k-i)! [k' == k-i+j],
/// with terms where k - i < 0 absent.
Rational z_closed_form(const ZQuery& q);

/// Gauss-Laguerre evaluation of the same integral in extended precision.
/// Independent of z_closed_form; used as its oracle.
double z_quadrature(const ZQuery& q);

/// Number of Gauss-Laguerre nodes z_quadrature uses for q.
unsigned quadrature_order(const ZQuery& q);

/// |k - k'| <= alpha. When false, Z vanishes.
bool selection_rule(const ZQuery& q);

/// (k+m)!/k! (2k+m+1) [k' == k]; equals Z(1, k, k').
Rational i2_exercise(unsigned k, unsigned kprime, unsigned m);

} // namespace stark::integrals
