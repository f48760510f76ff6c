#include <algorithm>
#include <cmath>
#include <limits>

#include "steinkit/numerics/derivative.hpp"
#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/stein/engine.hpp"

namespace steinkit::stein {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One-sided solution value from the representation whose integrand mass lies
// on the requested side of x. Everything is scaled by g(x): the integrand is
// exp(log g(t) - log g(x)) (h(t) - e_h), so the forward form stays
// well-conditioned arbitrarily deep into the left tail where s g underflows.
double one_sided_value(const dist::SteinPair& pair, const TestFunction& h,
                       double e_h, double x, bool forward,
                       const SolveOptions& opt) {
  const double log_gx = pair.log_density(x);
  const auto& log_g = pair.log_density;
  const auto& fn = h.h;
  auto integrand = [&](double t) {
    return std::exp(log_g(t) - log_gx) * (fn(t) - e_h);
  };
  numerics::QuadratureOptions qo;
  qo.abs_tol = std::max(5e-17, opt.quad_abs_tol * std::max(pair.s(x), 1e-3));
  qo.rel_tol = 1e-12;
  qo.max_subdivisions = 3000;
  if (forward) {
    const auto q = numerics::integrate(integrand, 0.0, x, qo);
    return q.value / pair.s(x);
  }
  const auto q = numerics::integrate(integrand, x, kInf, qo);
  return -q.value / pair.s(x);
}

double refined_sup_norm(const TestFunction& h, double e_h,
                        std::span<const double> grid) {
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double l0 = std::log(grid[i]);
    const double l1 = std::log(grid[i + 1]);
    for (int j = 0; j < 10; ++j) {
      const double x = std::exp(l0 + (l1 - l0) * j / 10.0);
      sup = std::max(sup, std::fabs(h.h(x) - e_h));
    }
  }
  sup = std::max(sup, std::fabs(h.h(grid.back()) - e_h));
  return sup;
}

}  // namespace

SteinSolution solve_with_constant(const dist::SteinPair& pair, TestFunction& h,
                                  double c, std::span<const double> grid,
                                  const SolveOptions& opt) {
  if (grid.size() < 2)
    throw std::invalid_argument("solve: grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1])))
      throw std::invalid_argument("solve: grid must be positive and strictly increasing");
  }

  SteinSolution sol;
  sol.grid.assign(grid.begin(), grid.end());
  sol.constant_c = c;
  const std::size_t n = grid.size();
  sol.f_values.assign(n, kNaN);
  sol.f_prime_values.assign(n, kNaN);
  sol.residual.assign(n, kNaN);
  sol.masked.assign(n, false);

  {
    // asks for near-machine accuracy since the agreement diagnostic divides
    // the e_h error by s g; accept whatever estimate the budget reaches as
    // long as it is comfortably below the 1e-10 expectation contract
    numerics::QuadratureOptions eo;
    eo.abs_tol = opt.e_h_abs_tol;
    eo.max_subdivisions = 8000;
    const auto& log_g = pair.log_density;
    const auto& fn = h.h;
    const auto q = numerics::integrate(
        [&](double t) { return fn(t) * std::exp(log_g(t)); }, 0.0, kInf, eo);
    if (q.abs_error_estimate > 1e-12)
      throw NonConvergenceError("solve: E h(W) quadrature did not converge for " +
                                pair.family);
    sol.e_h = q.value;
  }
  h.sup_norm_of_centered = refined_sup_norm(h, sol.e_h, grid);

  const double split = pair.alpha ? *pair.alpha : grid[n / 2];

  std::vector<double> log_sg(n);
  double log_sg_peak = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    log_sg[i] = pair.log_sg(grid[i]);
    log_sg_peak = std::max(log_sg_peak, log_sg[i]);
  }

  auto f_eval = [&](double y) {
    double v = one_sided_value(pair, h, sol.e_h, y, y <= split, opt);
    if (c != 0.0) v += c * std::exp(-pair.log_sg(y));
    return v;
  };

  sol.max_residual = 0.0;
  sol.forms_agreement = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    if (log_sg[i] < opt.mask_log_sg_floor) {
      sol.masked[i] = true;
      ++sol.masked_count;
      continue;
    }
    const bool forward = x <= split;
    double f = one_sided_value(pair, h, sol.e_h, x, forward, opt);
    if (c != 0.0) f += c * std::exp(-log_sg[i]);
    sol.f_values[i] = f;

    const double rhs = h.h(x) - sol.e_h;
    sol.f_prime_values[i] = (rhs - pair.tau(x) * f) / pair.s(x);

    const double fd = numerics::differentiate(f_eval, x, opt.residual_rel_step);
    const double res = std::fabs(pair.s(x) * fd + pair.tau(x) * f - rhs);
    sol.residual[i] = res;
    if (c == 0.0) sol.max_residual = std::max(sol.max_residual, res);

    if (log_sg_peak - log_sg[i] <= opt.agreement_log_window) {
      double other = one_sided_value(pair, h, sol.e_h, x, !forward, opt);
      if (c != 0.0) other += c * std::exp(-log_sg[i]);
      sol.forms_agreement = std::max(sol.forms_agreement, std::fabs(f - other));
      ++sol.agreement_points;
    }
  }
  if (c != 0.0) {
    // residuals reported for diagnostics only; the kernel term's
    // finite-difference noise scales with its magnitude
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (!sol.masked[i] && std::isfinite(sol.residual[i]))
        worst = std::max(worst, sol.residual[i]);
    sol.max_residual = worst;
  }
  return sol;
}

SteinSolution solve_stein_equation(const dist::SteinPair& pair, TestFunction& h,
                                   std::span<const double> grid,
                                   const SolveOptions& options) {
  return solve_with_constant(pair, h, 0.0, grid, options);
}

}  // namespace steinkit::stein
