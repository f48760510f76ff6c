#include <cmath>
#include <limits>

#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/stein/engine.hpp"

namespace steinkit::stein {

BoundReport bound_m(const dist::SteinPair& pair) {
  const double alpha = dist::tau_zero(pair);  // enforces monotone_tau

  // both tail masses scaled by g(alpha); division by s(alpha) last
  const double log_g_alpha = pair.log_density(alpha);
  const auto& log_g = pair.log_density;
  auto scaled_g = [&](double t) { return std::exp(log_g(t) - log_g_alpha); };

  numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  opt.max_subdivisions = 6000;

  const auto left = numerics::integrate(scaled_g, 0.0, alpha, opt);
  const auto right = numerics::integrate(
      scaled_g, alpha, std::numeric_limits<double>::infinity(), opt);
  if (!left.converged || !right.converged)
    throw NonConvergenceError("bound_m: tail-mass quadrature did not converge for " +
                              pair.family);

  BoundReport report;
  report.alpha = alpha;
  report.left_ratio = left.value / pair.s(alpha);
  report.right_ratio = right.value / pair.s(alpha);
  report.m = std::max(report.left_ratio, report.right_ratio);
  return report;
}

}  // namespace steinkit::stein
