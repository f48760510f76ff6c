#include <cmath>
#include <limits>
#include <sstream>

#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/stein/engine.hpp"

namespace steinkit::stein {

double expectation(const dist::SteinPair& pair, const TestFunction& h,
                   double abs_tol) {
  numerics::QuadratureOptions opt;
  opt.abs_tol = abs_tol;
  opt.max_subdivisions = 8000;
  const auto& log_g = pair.log_density;
  const auto& fn = h.h;
  const auto q = numerics::integrate(
      [&](double t) { return fn(t) * std::exp(log_g(t)); }, 0.0,
      std::numeric_limits<double>::infinity(), opt);
  if (!q.converged) {
    std::ostringstream msg;
    msg << "expectation: quadrature did not reach tol " << abs_tol << " for "
        << pair.family << " (error estimate " << q.abs_error_estimate << ")";
    throw NonConvergenceError(msg.str());
  }
  return q.value;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(lo < hi) || n < 2)
    throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (n - 1.0));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (!(lo < hi) || n < 2)
    throw std::invalid_argument("linear_grid: need lo < hi and n >= 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1.0);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> standard_grid() { return log_grid(1e-3, 50.0, 400); }

}  // namespace steinkit::stein
