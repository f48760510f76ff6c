#pragma once

namespace steinkit::specfun {

// ln Gamma(x) for x > 0 (Lanczos approximation, absolute error < 1e-12).
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

namespace detail {

// ln |Gamma(x)| for any non-pole x; *sign receives the sign of Gamma(x).
// Returns -inf with sign 0 at the poles x = 0, -1, -2, ...
double log_gamma_signed(double x, int* sign);

// 1 / Gamma(x) for any real x (entire; zero at the poles of Gamma).
double reciprocal_gamma(double x);

// Digamma psi(x) for x > 0.
double digamma(double x);

}  // namespace detail

}  // namespace steinkit::specfun
