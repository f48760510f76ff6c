#include "steinkit/dist/kummer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "steinkit/numerics/quadrature.hpp"
#include "steinkit/specfun/gamma.hpp"
#include "steinkit/specfun/tricomi_u.hpp"

namespace steinkit::dist {

namespace {

// ln int_0^inf x^{a-1} (1+x)^{-a-b} e^{-cx} dx, integrand scaled by its peak.
double log_normalizing_integral(const KummerParams& prm) {
  const double pow_x = prm.a - 1.0;
  const double pow_1px = -(prm.a + prm.b);
  auto log_f = [&](double x) {
    return pow_x * std::log(x) + pow_1px * std::log1p(x) - prm.c * x;
  };

  double x_ref;
  if (prm.a > 1.0) {
    // stationary point of the log integrand
    const double q = 1.0 + prm.b + prm.c - prm.a;
    x_ref = (-q + std::sqrt(q * q + 4.0 * prm.c * (prm.a - 1.0))) / (2.0 * prm.c);
    if (!(x_ref > 0.0) || !std::isfinite(x_ref)) x_ref = 1.0 / prm.c;
  } else {
    x_ref = std::min(1.0, 1.0 / prm.c);
  }
  const double log_ref = log_f(x_ref);

  numerics::QuadratureOptions opt;
  opt.abs_tol = 1e-280;
  opt.rel_tol = 1e-12;
  opt.max_subdivisions = 8000;
  const auto q = numerics::integrate(
      [&](double x) { return std::exp(log_f(x) - log_ref); }, 0.0,
      std::numeric_limits<double>::infinity(), opt);
  if (!q.converged || !(q.value > 0.0))
    throw std::runtime_error("KummerDistribution: normalizer quadrature failed");
  return std::log(q.value) + log_ref;
}

}  // namespace

KummerParams::KummerParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("KummerParams: a must be positive");
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::domain_error("KummerParams: c must be positive");
  if (!std::isfinite(b)) throw std::domain_error("KummerParams: b must be finite");
}

KummerDistribution::KummerDistribution(const KummerParams& params)
    : params_(params), log_norm_(log_normalizing_integral(params)) {}

double KummerDistribution::log_density(double x) const {
  if (!(x > 0.0))
    throw std::domain_error("kummer_log_density: x must be positive");
  return -log_norm_ + (params_.a - 1.0) * std::log(x) -
         (params_.a + params_.b) * std::log1p(x) - params_.c * x;
}

KummerDistribution::NormalizerDiagnostics
KummerDistribution::normalizer_diagnostics() const {
  NormalizerDiagnostics diag{};
  diag.log_quadrature = log_norm_;
  const double lg_a = specfun::log_gamma(params_.a);

  const auto u1 = specfun::tricomi_u(params_.a, 1.0 - params_.b, params_.c);
  diag.log_gamma_u_one_minus_b =
      u1.converged ? lg_a + u1.log_value() : std::nan("");
  const auto u2 =
      specfun::tricomi_u(params_.a, params_.a - params_.b + 1.0, params_.c);
  diag.log_gamma_u_a_minus_b_plus_one =
      u2.converged ? lg_a + u2.log_value() : std::nan("");

  diag.rel_diff_one_minus_b =
      std::fabs(std::expm1(diag.log_gamma_u_one_minus_b - log_norm_));
  diag.rel_diff_a_minus_b_plus_one =
      std::fabs(std::expm1(diag.log_gamma_u_a_minus_b_plus_one - log_norm_));
  return diag;
}

double kummer_alpha(const KummerParams& params) {
  const double t = 1.0 - params.b - params.c;
  const double disc = std::sqrt(t * t + 4.0 * params.a * params.c);
  double alpha = (t >= 0.0) ? (t + disc) / (2.0 * params.c)
                            : 2.0 * params.a / (disc - t);
  const Quadratic tau{params.a, t, -params.c};
  const double slope = tau.slope(alpha);
  if (slope != 0.0) alpha -= tau(alpha) / slope;
  return alpha;
}

SteinPair KummerDistribution::stein_pair() const {
  SteinPair pair;
  pair.s = Quadratic{0.0, 1.0, 1.0};
  pair.tau = Quadratic{params_.a, 1.0 - params_.b - params_.c, -params_.c};
  const double ln = log_norm_;
  const KummerParams prm = params_;
  pair.log_density = [prm, ln](double x) {
    if (!(x > 0.0))
      throw std::domain_error("kummer log_density: x must be positive");
    return -ln + (prm.a - 1.0) * std::log(x) - (prm.a + prm.b) * std::log1p(x) -
           prm.c * x;
  };
  pair.log_normalizer = -log_norm_;
  pair.alpha = kummer_alpha(params_);
  pair.monotone_tau = params_.monotone_tau();
  std::ostringstream label;
  label << "kummer(a=" << params_.a << ",b=" << params_.b << ",c=" << params_.c
        << ")";
  pair.family = label.str();
  return pair;
}

double kummer_log_density(const KummerParams& params, double x) {
  return KummerDistribution(params).log_density(x);
}

SteinPair kummer_stein_pair(const KummerParams& params) {
  return KummerDistribution(params).stein_pair();
}

}  // namespace steinkit::dist
