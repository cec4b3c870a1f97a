#pragma once

// Special functions needed by the closed-form derivative oracles and the
// quadrature normalisation. Everything here is a pure function.

namespace fracdr::specfun {

/// Euler Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

/// Bessel function of the first kind J_nu(x) by its ascending series.
/// Intended for moderate x (the library only needs x in [0, 4]).
/// Requires nu > -1 and x >= 0; throws DomainError otherwise.
double bessel_j(double nu, double x);

/// t^{1-alpha} * sum_k (-t^2)^k / Gamma(2k+2-alpha), the Caputo derivative
/// of sin t. Summation stops once |term| < tol * |partial sum|.
double caputo_sin_series(double alpha, double t, double tol = 1e-15);

}  // namespace fracdr::specfun
