// Shared fixtures for the unit and acceptance suites: the documented
// parameter grids (mixed regimes, 20 per family) and a KS-distance upper
// bound against the quadrature CDF.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "steinkit/dist/gig.hpp"
#include "steinkit/dist/kummer.hpp"
#include "steinkit/numerics/quadrature.hpp"

namespace test_support {

inline const std::vector<steinkit::dist::GigParams>& gig_sets() {
  using steinkit::dist::GigParams;
  static const std::vector<GigParams> sets = {
      // monotone tau (p <= -1)
      GigParams(-1.0, 2.0, 2.0),   GigParams(-1.5, 1.0, 1.0),
      GigParams(-2.0, 1.0, 1.0),   GigParams(-2.0, 0.5, 3.0),
      GigParams(-3.0, 2.0, 0.5),   GigParams(-5.0, 1.0, 2.0),
      GigParams(-1.0, 0.3, 0.8),   GigParams(-1.2, 4.0, 1.0),
      GigParams(-2.5, 1.5, 1.5),   GigParams(-4.0, 0.7, 0.7),
      GigParams(-1.0, 1.0, 5.0),   GigParams(-6.0, 3.0, 0.4),
      // non-monotone regimes
      GigParams(-0.5, 1.0, 1.0),   GigParams(0.0, 1.0, 1.0),
      GigParams(0.5, 2.0, 1.0),    GigParams(1.0, 1.0, 2.0),
      GigParams(2.0, 0.8, 1.2),    GigParams(3.0, 5.0, 0.5),
      GigParams(1.5, 0.5, 0.5),    GigParams(0.2, 2.0, 3.0)};
  return sets;
}

inline const std::vector<steinkit::dist::KummerParams>& kummer_sets() {
  using steinkit::dist::KummerParams;
  static const std::vector<KummerParams> sets = {
      // monotone tau (1 - b - c <= 0)
      KummerParams(1.0, 1.0, 1.0),   KummerParams(1.0, 0.0, 1.0),
      KummerParams(2.0, 1.0, 3.0),   KummerParams(0.5, 2.0, 1.0),
      KummerParams(3.0, -1.0, 2.5),  KummerParams(1.5, 0.5, 0.6),
      KummerParams(5.0, -2.0, 4.0),  KummerParams(0.7, 1.5, 2.0),
      KummerParams(2.5, 3.0, 0.5),   KummerParams(4.0, 0.25, 0.75),
      KummerParams(1.0, 4.0, 0.3),   KummerParams(6.0, -4.0, 6.0),
      // non-monotone regimes
      KummerParams(1.0, 0.0, 0.5),   KummerParams(0.4, -3.0, 2.5),
      KummerParams(2.0, -5.0, 1.5),  KummerParams(0.5, -1.0, 0.8),
      KummerParams(3.0, -4.0, 1.0),  KummerParams(1.2, 0.3, 0.2),
      KummerParams(8.0, -2.0, 0.7),  KummerParams(0.9, -0.5, 1.2)};
  return sets;
}

struct KsBound {
  double d_upper = 0.0;        // upper bound on the KS distance
  double max_panel_mass = 0.0; // resolution of the CDF table
  double total_mass = 0.0;     // sanity: should be ~1
};

// KS distance of a sample against the CDF obtained by panelwise
// Gauss-Kronrod integration of exp(log_density). The CDF at a sample point
// is bracketed by the cumulative values at the enclosing panel boundaries,
// giving an upper bound on the true KS distance.
inline KsBound ks_upper_bound(std::vector<double> sample,
                              const std::function<double(double)>& log_density,
                              int panels = 50000) {
  std::sort(sample.begin(), sample.end());
  const double lo = std::max(1e-9, sample.front() * 0.5);
  const double hi = sample.back() * 1.2;

  std::vector<double> bounds(panels + 1);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i <= panels; ++i)
    bounds[i] = std::exp(llo + (lhi - llo) * i / panels);

  auto density = [&](double x) { return std::exp(log_density(x)); };

  KsBound result;
  std::vector<double> cdf(panels + 1);
  {
    steinkit::numerics::QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    cdf[0] = steinkit::numerics::integrate(density, 1e-300, bounds[0], opt).value;
  }
  for (int i = 0; i < panels; ++i) {
    const auto panel =
        steinkit::numerics::detail::gk15(density, bounds[i], bounds[i + 1]);
    cdf[i + 1] = cdf[i] + panel.value;
    result.max_panel_mass = std::max(result.max_panel_mass, panel.value);
  }
  {
    steinkit::numerics::QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    result.total_mass =
        cdf[panels] +
        steinkit::numerics::integrate(
            density, hi, std::numeric_limits<double>::infinity(), opt)
            .value;
  }

  const double n = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double x = sample[i];
    const auto it = std::upper_bound(bounds.begin(), bounds.end(), x);
    const std::size_t j = std::min<std::size_t>(
        bounds.size() - 1, static_cast<std::size_t>(it - bounds.begin()));
    const double f_hi = cdf[j];
    const double f_lo = cdf[j > 0 ? j - 1 : 0];
    result.d_upper = std::max(result.d_upper, f_hi - i / n);
    result.d_upper = std::max(result.d_upper, (i + 1) / n - f_lo);
  }
  return result;
}

}  // namespace test_support
