#include "steinkit/dist/gig.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steinkit/specfun/bessel_k.hpp"

namespace steinkit::dist {

GigParams::GigParams(double p_, double a_, double b_) : p(p_), a(a_), b(b_) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("GigParams: a must be positive");
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::domain_error("GigParams: b must be positive");
  if (!std::isfinite(p)) throw std::domain_error("GigParams: p must be finite");
}

GigDistribution::GigDistribution(const GigParams& params) : params_(params) {
  const double omega = std::sqrt(params.a * params.b);
  const auto k = specfun::bessel_k(params.p, omega);
  if (!k.converged)
    throw std::runtime_error("GigDistribution: Bessel K evaluation failed");
  log_norm_ = 0.5 * params.p * std::log(params.a / params.b) -
              std::log(2.0) - k.log_value();
}

double GigDistribution::log_density(double x) const {
  if (!(x > 0.0)) throw std::domain_error("gig_log_density: x must be positive");
  return log_norm_ + (params_.p - 1.0) * std::log(x) -
         0.5 * (params_.a * x + params_.b / x);
}

double gig_alpha(const GigParams& params) {
  const double t = params.p + 1.0;
  const double disc = std::sqrt(t * t + params.a * params.b);
  double alpha = (t >= 0.0) ? (t + disc) / params.a : params.b / (disc - t);
  // one Newton step against tau
  const Quadratic tau{params.b / 2.0, t, -params.a / 2.0};
  const double slope = tau.slope(alpha);
  if (slope != 0.0) alpha -= tau(alpha) / slope;
  return alpha;
}

SteinPair GigDistribution::stein_pair() const {
  SteinPair pair;
  pair.s = Quadratic{0.0, 0.0, 1.0};
  pair.tau = Quadratic{params_.b / 2.0, params_.p + 1.0, -params_.a / 2.0};
  const double ln = log_norm_;
  const GigParams prm = params_;
  pair.log_density = [prm, ln](double x) {
    if (!(x > 0.0)) throw std::domain_error("gig log_density: x must be positive");
    return ln + (prm.p - 1.0) * std::log(x) - 0.5 * (prm.a * x + prm.b / x);
  };
  pair.log_normalizer = log_norm_;
  pair.alpha = gig_alpha(params_);
  pair.monotone_tau = params_.monotone_tau();
  std::ostringstream label;
  label << "gig(p=" << params_.p << ",a=" << params_.a << ",b=" << params_.b << ")";
  pair.family = label.str();
  return pair;
}

double gig_log_density(const GigParams& params, double x) {
  return GigDistribution(params).log_density(x);
}

SteinPair gig_stein_pair(const GigParams& params) {
  return GigDistribution(params).stein_pair();
}

}  // namespace steinkit::dist
