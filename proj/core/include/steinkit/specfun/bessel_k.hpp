#pragma once

#include "steinkit/specfun/result.hpp"

namespace steinkit::specfun {

// Modified Bessel function of the third kind K_p(x), x > 0, any real order
// (K is even in the order). Returned in scaled form; see SpecfunResult.
//
// Small arguments (x <= 2) use Temme's series for the fractional order
// |mu| <= 1/2; larger arguments use the Steed/Thompson-Barnett continued
// fraction with the e^{-x} factor carried in log_scale. Higher orders are
// reached by the upward three-term recurrence, renormalized against
// overflow.
//
// Throws std::domain_error for x <= 0.
SpecfunResult bessel_k(double order, double x);

}  // namespace steinkit::specfun
