#pragma once

#include <stdexcept>

namespace steinkit::numerics {

// Central difference with step h = rel_step * x, O(h^2) truncation error.
// The step is symmetrized through the rounded endpoints so the divisor is
// the exact floating-point spacing.
template <class F>
double differentiate(F&& f, double x, double rel_step = 1e-5) {
  if (!(x > 0.0)) throw std::domain_error("differentiate: x must be positive");
  if (!(rel_step > 0.0)) throw std::invalid_argument("differentiate: rel_step must be positive");
  const double h = rel_step * x;
  const double xp = x + h;
  const double xm = x - h;
  return (f(xp) - f(xm)) / (xp - xm);
}

}  // namespace steinkit::numerics
