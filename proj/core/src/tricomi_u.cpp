#include "steinkit/specfun/tricomi_u.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/specfun/gamma.hpp"

namespace steinkit::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAcceptRelErr = 3e-11;

// signed log-magnitude value: sign * exp(logmag), sign in {-1, 0, +1}
struct LogVal {
  double logmag = -std::numeric_limits<double>::infinity();
  int sign = 0;
};

LogVal logval_from(double v) {
  if (v == 0.0 || !std::isfinite(v)) return {};
  return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

LogVal logval_sum(const LogVal& x, const LogVal& y) {
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const LogVal& big = (x.logmag >= y.logmag) ? x : y;
  const LogVal& small = (x.logmag >= y.logmag) ? y : x;
  const double r = std::exp(small.logmag - big.logmag);
  const double m = (big.sign == small.sign) ? 1.0 + r : 1.0 - r;
  if (m <= 0.0) {
    if (m == 0.0) return {};
    return {big.logmag + std::log(-m), -big.sign};
  }
  return {big.logmag + std::log(m), big.sign};
}

struct RouteResult {
  LogVal val;
  double rel_err = std::numeric_limits<double>::infinity();
  int terms = 0;
  bool usable = false;
};

SpecfunResult to_result(const RouteResult& r, double extra_log_scale) {
  SpecfunResult out;
  out.terms_used = r.terms;
  if (!r.usable || r.val.sign <= 0) return out;  // U(a,b,z) > 0 on this domain
  out.value = static_cast<double>(r.val.sign);
  out.log_scale = r.val.logmag + extra_log_scale;
  out.converged = true;
  return out;
}

// scaled series accumulation with a running max |term| so callers can
// account for interior cancellation
struct SeriesSum {
  double sum = 0.0, log_scale = 0.0, max_abs = 0.0;
  int terms = 0;
  bool converged = false;
  LogVal value() const {
    LogVal v = logval_from(sum);
    if (v.sign != 0) v.logmag += log_scale;
    return v;
  }
  double loss() const {
    return (sum == 0.0 || max_abs == 0.0)
               ? std::numeric_limits<double>::infinity()
               : max_abs / std::fabs(sum);
  }
};

// plain 1F1(a;b;z), b not a non-positive integer
SeriesSum kummer_m_series(double a, double b, double z, int max_terms = 1200) {
  SeriesSum s;
  double term = 1.0;
  s.sum = 1.0;
  s.max_abs = 1.0;
  int k = 0;
  int small_run = 0;
  for (; k < max_terms; ++k) {
    const double denom = b + k;
    if (denom == 0.0) break;  // caller guards; treat as failure
    term *= (a + k) * z / (denom * (k + 1));
    s.sum += term;
    s.max_abs = std::max(s.max_abs, std::fabs(term));
    if (std::fabs(s.sum) > 1e250 || s.max_abs > 1e250) {
      const double f = std::max(std::fabs(s.sum), s.max_abs);
      s.sum /= f;
      term /= f;
      s.max_abs /= f;
      s.log_scale += std::log(f);
    }
    // negative b revives the terms when b+k crosses zero, so only stop once
    // every remaining denominator is positive and the terms are past their peak
    small_run = (std::fabs(term) < kEps * std::fabs(s.sum)) ? small_run + 1 : 0;
    if (k > z && b + k > 0.5 && small_run >= 3) {
      s.converged = true;
      break;
    }
  }
  s.terms = k + 1;
  return s;
}

// --- connection formula (DLMF 13.2.42), non-integer b:
// U = Gamma(1-b)/Gamma(a-b+1) M(a,b,z) + Gamma(b-1)/Gamma(a) z^{1-b} M(a-b+1,2-b,z)
RouteResult connection_formula(double a, double b, double z) {
  RouteResult r;
  SeriesSum m1 = kummer_m_series(a, b, z);
  SeriesSum m2 = kummer_m_series(a - b + 1.0, 2.0 - b, z);
  if (!m1.converged || !m2.converged) return r;
  r.terms = m1.terms + m2.terms;

  int sg_num = 0, sg_den = 0;
  LogVal t1 = m1.value();
  if (t1.sign != 0) {
    const double lg_num = detail::log_gamma_signed(1.0 - b, &sg_num);
    const double lg_den = detail::log_gamma_signed(a - b + 1.0, &sg_den);
    if (sg_num == 0 || sg_den == 0) return r;
    t1.logmag += lg_num - lg_den;
    t1.sign *= sg_num * sg_den;
  }
  LogVal t2 = m2.value();
  if (t2.sign != 0) {
    const double lg_num = detail::log_gamma_signed(b - 1.0, &sg_num);
    const double lg_den = detail::log_gamma_signed(a, &sg_den);
    if (sg_num == 0 || sg_den == 0) return r;
    t2.logmag += lg_num - lg_den + (1.0 - b) * std::log(z);
    t2.sign *= sg_num * sg_den;
  }

  LogVal total = logval_sum(t1, t2);
  if (total.sign == 0) return r;

  // each term's interior series loss is amplified by that term's share of
  // the outer cancellation
  const double amp1 =
      (t1.sign == 0) ? 0.0 : std::exp(t1.logmag - total.logmag);
  const double amp2 =
      (t2.sign == 0) ? 0.0 : std::exp(t2.logmag - total.logmag);
  r.val = total;
  // leading factor calibrated against high-precision references; the
  // max-partial proxy undercounts accumulated rounding by a few ulps per term
  r.rel_err =
      6.0 * kEps * (m1.loss() * amp1 + m2.loss() * amp2 + amp1 + amp2 + 4.0);
  r.usable = true;
  return r;
}

// --- integer b = n+1 >= 1: logarithmic series (DLMF 13.2.9)
RouteResult integer_b_series(double a, int n, double z) {
  RouteResult r;
  const double log_z = std::log(z);
  const int max_terms = 600;

  double w = 1.0;  // (a)_k z^k / ((n+1)_k k!)
  double sum = 0.0, max_abs = 0.0;
  int k = 0;
  bool converged = false;
  for (; k < max_terms; ++k) {
    const double psi_a = detail::digamma(a + k);
    const double psi_1 = detail::digamma(1.0 + k);
    const double psi_n = detail::digamma(n + 1.0 + k);
    const double term = w * (log_z + psi_a - psi_1 - psi_n);
    sum += term;
    // rounding of the bracket scales with its components, not with the
    // (possibly cancelled) bracket value
    max_abs = std::max(
        max_abs, w * (std::fabs(log_z) + std::fabs(psi_a) + std::fabs(psi_1) +
                      std::fabs(psi_n)));
    const double w_next = w * (a + k) * z / ((n + 1.0 + k) * (k + 1.0));
    const double bound = std::fabs(log_z) + 3.0 + std::log(2.0 + k + n + a);
    if (k > z && w_next * bound < kEps * (std::fabs(sum) + 1e-300)) {
      converged = true;
      break;
    }
    w = w_next;
  }
  if (!converged) return r;
  r.terms = k + 1;

  LogVal piece1 = logval_from(sum);
  const double rgam = detail::reciprocal_gamma(a - n);
  if (piece1.sign != 0 && rgam != 0.0) {
    int sg = 0;
    piece1.logmag += std::log(std::fabs(rgam)) - detail::log_gamma_signed(n + 1.0, &sg);
    piece1.sign *= ((n % 2 == 0) ? -1 : 1) * (rgam > 0.0 ? 1 : -1);
  } else {
    piece1 = {};
  }

  LogVal piece2{};
  double fin_loss = 1.0;
  if (n >= 1) {
    double u = 1.0, fin = 1.0, fin_max = 1.0;
    for (int j = 0; j < n - 1; ++j) {
      u *= (a - n + j) * z / ((1.0 - n + j) * (j + 1.0));
      fin += u;
      fin_max = std::max(fin_max, std::fabs(u));
    }
    piece2 = logval_from(fin);
    if (piece2.sign != 0) {
      int sg = 0;
      piece2.logmag += detail::log_gamma_signed(static_cast<double>(n), &sg) - log_gamma(a) -
                       n * log_z;
      fin_loss = fin_max / std::fabs(fin);
    }
  }

  LogVal total = logval_sum(piece1, piece2);
  if (total.sign == 0) return r;
  const double series_loss = (sum == 0.0) ? 1e30 : max_abs / std::fabs(sum);
  const double amp1 =
      (piece1.sign == 0) ? 0.0 : std::exp(piece1.logmag - total.logmag);
  const double amp2 =
      (piece2.sign == 0) ? 0.0 : std::exp(piece2.logmag - total.logmag);
  r.val = total;
  r.rel_err = 4.0 * kEps *
              (series_loss * amp1 + fin_loss * amp2 + amp1 + amp2 + 4.0);
  r.usable = true;
  return r;
}

// --- Poincare asymptotic series, optimally truncated:
// U ~ z^{-a} sum_k (a)_k (a-b+1)_k (-1)^k / (k! z^k)
RouteResult asymptotic_series(double a, double b, double z) {
  RouteResult r;
  const int max_terms = 500;
  double term = 1.0, sum = 1.0;
  double smallest = 1.0;
  int k = 0;
  for (; k < max_terms; ++k) {
    const double next = term * (a + k) * (a - b + 1.0 + k) * (-1.0) / ((k + 1.0) * z);
    if (std::fabs(next) >= std::fabs(term)) break;  // divergence onset: truncate
    term = next;
    sum += term;
    smallest = std::fabs(term);
    if (smallest < 0.5 * kEps * std::fabs(sum)) break;
  }
  r.terms = k + 1;
  if (sum <= 0.0) return r;
  r.val = {std::log(sum) - a * std::log(z), 1};
  r.rel_err = smallest / std::fabs(sum) + 4.0 * kEps;
  r.usable = true;
  return r;
}

// --- fallback: scaled adaptive quadrature of
// U = (1/Gamma(a)) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt
RouteResult laplace_quadrature(double a, double b, double z) {
  RouteResult r;
  const double pow1 = a - 1.0;       // exponent of t
  const double pow2 = b - a - 1.0;   // exponent of (1+t)
  auto log_integrand = [&](double t) {
    return -z * t + pow1 * std::log(t) + pow2 * std::log1p(t);
  };

  double t_ref;
  if (a > 1.0) {
    // interior peak of the integrand
    const double q = z + 2.0 - b;
    t_ref = (-q + std::sqrt(q * q + 4.0 * z * (a - 1.0))) / (2.0 * z);
    if (!(t_ref > 0.0) || !std::isfinite(t_ref)) t_ref = 1.0 / z;
  } else {
    t_ref = std::min(1.0, 1.0 / z);
  }
  const double log_ref = log_integrand(t_ref);

  numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-280;
  opt.rel_tol = 1e-12;
  opt.max_subdivisions = 8000;
  auto integrand = [&](double t) { return std::exp(log_integrand(t) - log_ref); };
  const auto q = numerics::integrate(integrand, 0.0,
                                     std::numeric_limits<double>::infinity(), opt);
  r.terms = q.subdivisions;
  if (!(q.value > 0.0)) return r;
  r.val = {std::log(q.value) + log_ref - log_gamma(a), 1};
  r.rel_err = q.converged ? 1e-12 : q.abs_error_estimate / q.value;
  r.usable = true;
  return r;
}

SpecfunResult u_dispatch(double a, double b, double z, bool allow_transform) {
  const double br = std::round(b);
  const bool b_is_int = std::fabs(b - br) <= 1e-12 * std::max(1.0, std::fabs(br));

  if (allow_transform) {
    // Kummer transformation U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z)
    const bool int_low = b_is_int && br <= 0.0;                    // to integer 2-b >= 2
    const bool frac_high = !b_is_int && b > 1.0 && a - b + 1.0 > 0.0;  // to 2-b < 1
    if (int_low || frac_high) {
      SpecfunResult sub = u_dispatch(a - b + 1.0, 2.0 - b, z, false);
      sub.log_scale += (1.0 - b) * std::log(z);
      return sub;
    }
  }

  int terms_total = 0;
  if (z >= 30.0 && (a + 1.0) * (std::fabs(a - b + 1.0) + 1.0) < z * z) {
    RouteResult r2 = asymptotic_series(a, b, z);
    terms_total += r2.terms;
    if (r2.usable && r2.rel_err <= 1e-13) {
      SpecfunResult out = to_result(r2, 0.0);
      out.terms_used = terms_total;
      if (out.converged) return out;
    }
  }
  if (z <= 13.0) {
    RouteResult r01 = (b_is_int && br >= 1.0)
                          ? integer_b_series(a, static_cast<int>(br) - 1, z)
                          : connection_formula(a, b, z);
    terms_total += r01.terms;
    if (r01.usable && r01.rel_err <= kAcceptRelErr) {
      SpecfunResult out = to_result(r01, 0.0);
      out.terms_used = terms_total;
      if (out.converged) return out;
    }
  }
  RouteResult r4 = laplace_quadrature(a, b, z);
  terms_total += r4.terms;
  SpecfunResult out = to_result(r4, 0.0);
  out.terms_used = terms_total;
  out.converged = out.converged && r4.rel_err <= 1e-9;
  return out;
}

}  // namespace

SpecfunResult tricomi_u(double a, double b, double z) {
  if (!(a > 0.0)) throw std::domain_error("tricomi_u: a must be positive");
  if (!(z > 0.0)) throw std::domain_error("tricomi_u: z must be positive");
  return u_dispatch(a, b, z, true);
}

}  // namespace steinkit::specfun
