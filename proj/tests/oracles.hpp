// Test-only reference oracles. These deliberately avoid the code paths they
// are used to check: the special functions are validated against direct
// quadrature of their integral representations, and tau zeros against the
// bracketing root finder.
#pragma once

#include <cmath>
#include <limits>

#include "steinkit/dist/stein_pair.hpp"
#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/numerics/root_find.hpp"
#include "steinkit/specfun/gamma.hpp"

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// K_p(x) = int_0^inf e^{-x cosh t} cosh(p t) dt, integrand assembled in log
// space so the decaying exponential never meets an overflowed cosh
inline double bessel_k_by_quadrature(double p, double x) {
  steinkit::numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-280;
  opt.rel_tol = 1e-11;
  opt.max_subdivisions = 8000;
  const auto q = steinkit::numerics::integrate(
      [p, x](double t) {
        const double pt = std::fabs(p * t);
        const double log_cosh_pt =
            pt + std::log1p(std::exp(-2.0 * pt)) - 0.6931471805599453094;
        return std::exp(-x * std::cosh(t) + log_cosh_pt);
      },
      0.0, kInf, opt);
  return q.value;
}

// U(a,b,z) = (1/Gamma(a)) int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt
inline double tricomi_u_by_quadrature(double a, double b, double z) {
  steinkit::numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-280;
  opt.rel_tol = 1e-11;
  opt.max_subdivisions = 8000;
  const auto q = steinkit::numerics::integrate(
      [a, b, z](double t) {
        return std::exp(-z * t + (a - 1.0) * std::log(t) +
                        (b - a - 1.0) * std::log1p(t));
      },
      0.0, kInf, opt);
  return q.value * std::exp(-steinkit::specfun::log_gamma(a));
}

// positive zero of tau by Brent bracketing on (lo, hi)
inline double tau_zero_by_root_find(const steinkit::dist::SteinPair& pair,
                                    double lo = 1e-9, double hi = 1e6) {
  return steinkit::numerics::find_root(
      [&pair](double x) { return pair.tau(x); }, lo, hi, 1e-14);
}

}  // namespace oracles
