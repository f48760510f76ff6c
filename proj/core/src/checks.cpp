#include <cmath>
#include <limits>

#include "steinkit/numerics/derivative.hpp"
#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/stein/engine.hpp"

namespace steinkit::stein {

StructuralReport check_structural_identity(const dist::SteinPair& pair,
                                           std::span<const double> grid,
                                           double tol, double rel_step) {
  StructuralReport report;
  report.tolerance = tol;
  const auto& log_g = pair.log_density;
  auto sg = [&](double t) { return pair.s(t) * std::exp(log_g(t)); };

  for (double x : grid) {
    const double g = std::exp(log_g(x));
    const double tau_x = pair.tau(x);

    // h = rel_step * min(x, s/|tau|): s/|tau| is the local variation scale
    // of s g, which collapses like x^2/b near the GIG origin
    double scale = x;
    if (tau_x != 0.0) scale = std::min(scale, std::fabs(pair.s(x) / tau_x));
    const double step_rel = rel_step * scale / x;

    const double diff = numerics::differentiate(sg, x, step_rel);
    const double denom =
        g * std::max(std::fabs(tau_x), 1e-3 * pair.s(x) / x) + 1e-300;
    const double rel_err = std::fabs(diff - tau_x * g) / denom;
    if (rel_err > report.max_relative_error) {
      report.max_relative_error = rel_err;
      report.worst_x = x;
    }
    ++report.points;
  }
  report.passed = report.max_relative_error < tol;
  return report;
}

LemmaReport check_lemma_inequalities(const dist::SteinPair& pair,
                                     std::span<const double> grid) {
  const double alpha = dist::tau_zero(pair);
  const double window = 1e-6 * std::max(1.0, alpha);
  const double slack = 1e-9;

  LemmaReport report;
  report.inequalities_passed = true;
  report.l_monotone = true;
  report.u_monotone = true;

  const auto& log_g = pair.log_density;
  numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  opt.max_subdivisions = 4000;

  // everything scaled by g(x): the inequality int_0^x g <= s g / tau becomes
  // l_scaled <= s/tau + slack/g, with l_scaled = int_0^x g(t)/g(x) dt
  double prev_l = -std::numeric_limits<double>::infinity();
  double prev_u = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    if (std::fabs(x - alpha) <= window) {
      ++report.points_excluded;
      continue;
    }
    const double log_gx = log_g(x);
    auto scaled_g = [&](double t) { return std::exp(log_g(t) - log_gx); };
    const double slack_scaled = slack * std::exp(-log_gx);

    if (x < alpha) {
      const auto q = numerics::integrate(scaled_g, 0.0, x, opt);
      const double lhs = q.value;
      const double rhs = pair.s(x) / pair.tau(x) + slack_scaled;
      report.max_left_violation =
          std::max(report.max_left_violation, (lhs - rhs) / std::max(1.0, std::fabs(rhs)));
      if (lhs > rhs) report.inequalities_passed = false;

      const double l_x = q.value / pair.s(x);
      if (l_x < prev_l * (1.0 - 1e-9) - 1e-12) report.l_monotone = false;
      prev_l = l_x;
    } else {
      const auto q = numerics::integrate(
          scaled_g, x, std::numeric_limits<double>::infinity(), opt);
      const double lhs = q.value;
      const double rhs = -pair.s(x) / pair.tau(x) + slack_scaled;
      report.max_right_violation =
          std::max(report.max_right_violation, (lhs - rhs) / std::max(1.0, std::fabs(rhs)));
      if (lhs > rhs) report.inequalities_passed = false;

      const double u_x = q.value / pair.s(x);
      if (u_x > prev_u * (1.0 + 1e-9) + 1e-12) report.u_monotone = false;
      prev_u = u_x;
    }
    ++report.points_checked;
  }
  return report;
}

}  // namespace steinkit::stein
