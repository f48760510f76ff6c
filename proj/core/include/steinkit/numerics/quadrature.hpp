#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace steinkit::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = std::numeric_limits<double>::infinity();
  int subdivisions = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_subdivisions = 4000;
  // Panels narrower than max(min_width_abs, min_width_rel * |midpoint|) are
  // never split further. The relative floor lets refinement chase integrable
  // endpoint singularities (x^{a-1} with a < 1, essential decay like
  // e^{-b/(2x)}) arbitrarily close to 0, where panel widths shrink with the
  // midpoint itself.
  double min_width_rel = 1e-14;
  double min_width_abs = 1e-300;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  double value;
  double error;
};

// Gauss-Kronrod 7/15 rule on [lo, hi]; all nodes are interior, so the
// integrand is never evaluated at the endpoints.
template <class F>
inline Panel gk15(F&& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  double fv[15];
  const double fc = f(center);
  fv[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }

  double result_gauss = kWg[3] * fc;
  double result_kronrod = kWgk[7] * fc;
  double resabs = kWgk[7] * std::fabs(fc);
  for (int j = 0; j < 7; ++j) {
    const double sum = fv[j] + fv[14 - j];
    result_kronrod += kWgk[j] * sum;
    resabs += kWgk[j] * (std::fabs(fv[j]) + std::fabs(fv[14 - j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * result_kronrod;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));

  const double value = result_kronrod * half;
  resabs *= std::fabs(half);
  resasc *= std::fabs(half);

  double err = std::fabs((result_kronrod - result_gauss) * half);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  const double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);

  return Panel{lo, hi, value, err};
}

template <class F>
QuadratureResult adapt(F&& f, double lo, double hi, const QuadratureOptions& opt) {
  QuadratureResult res;
  std::vector<Panel> heap;
  heap.reserve(64);
  auto by_error = [](const Panel& a, const Panel& b) { return a.error < b.error; };

  heap.push_back(gk15(f, lo, hi));
  res.subdivisions = 1;

  double frozen_value = 0.0, frozen_error = 0.0;
  auto totals = [&] {
    double v = frozen_value, e = frozen_error;
    for (const Panel& p : heap) {
      v += p.value;
      e += p.error;
    }
    res.value = v;
    res.abs_error_estimate = e;
  };
  auto tol_met = [&] {
    return res.abs_error_estimate <=
           std::max(opt.abs_tol, opt.rel_tol * std::fabs(res.value));
  };

  std::make_heap(heap.begin(), heap.end(), by_error);
  totals();
  while (!tol_met() && res.subdivisions < opt.max_subdivisions && !heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.hi - worst.lo <
        std::max(opt.min_width_abs, opt.min_width_rel * std::fabs(mid))) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      totals();
      continue;
    }

    Panel left = gk15(f, worst.lo, mid);
    Panel right = gk15(f, mid, worst.hi);
    ++res.subdivisions;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
    totals();
  }

  res.converged = tol_met();
  return res;
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over (lo, hi), hi may be +inf.
// The semi-infinite case is mapped onto (0,1) by t = lo + u/(1-u), which
// keeps the Jacobian 1/(1-u)^2 rational; the integrands in this library
// decay exponentially so the mapped integrand vanishes at u -> 1.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi,
                           QuadratureOptions opt = {}) {
  if (!(opt.abs_tol > 0.0) && !(opt.rel_tol > 0.0))
    throw std::invalid_argument("integrate: tolerance must be positive");
  if (std::isinf(hi)) {
    auto mapped = [&f, lo](double u) {
      const double om = 1.0 - u;
      const double t = lo + u / om;
      return f(t) / (om * om);
    };
    return detail::adapt(mapped, 0.0, 1.0, opt);
  }
  if (!(lo < hi)) throw std::invalid_argument("integrate: need lo < hi");
  return detail::adapt(f, lo, hi, opt);
}

template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double abs_tol) {
  QuadratureOptions opt;
  opt.abs_tol = abs_tol;
  return integrate(std::forward<F>(f), lo, hi, opt);
}

}  // namespace steinkit::numerics
