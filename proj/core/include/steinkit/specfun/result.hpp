#pragma once

#include <cmath>

namespace steinkit::specfun {

// Scaled function value: the result is value * exp(log_scale). Splitting the
// magnitude this way keeps K_p and U representable where the plain double
// would overflow or underflow (large orders, extreme arguments).
struct SpecfunResult {
  double value = std::nan("");
  double log_scale = 0.0;
  bool converged = false;
  int terms_used = 0;

  double to_double() const { return value * std::exp(log_scale); }
  double log_value() const { return std::log(value) + log_scale; }
};

}  // namespace steinkit::specfun
