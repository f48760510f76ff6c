#include "steinkit/dist/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "steinkit/numerics/rng.hpp"

namespace steinkit::dist {

namespace {

using numerics::RngStream;

// --- Devroye (2014) rejection sampler for the standardized two-parameter
// GIG(lambda, omega, omega), lambda >= 0. The log-density of log(X/mode) is
// the concave psi below; the hat is uniform on the center piece with an
// exponential tail on each side.
struct DevroyeGig {
  double lam, omega, alpha;
  double t, s, eta, zeta, theta, xi;
  double p, r, t_shift, s_shift, q;

  explicit DevroyeGig(double lambda, double omega_) : lam(lambda), omega(omega_) {
    alpha = std::sqrt(omega * omega + lam * lam) - lam;

    double v = -psi(1.0);
    if (v >= 0.5 && v <= 2.0)
      t = 1.0;
    else if (v > 2.0)
      t = std::sqrt(2.0 / (alpha + lam));
    else
      t = std::log(4.0 / (alpha + 2.0 * lam));

    v = -psi(-1.0);
    if (v >= 0.5 && v <= 2.0)
      s = 1.0;
    else if (v > 2.0)
      s = std::sqrt(4.0 / (alpha * std::cosh(1.0) + lam));
    else {
      const double cap = lam > 0.0 ? 1.0 / lam : std::numeric_limits<double>::infinity();
      s = std::min(cap, std::log(1.0 + 1.0 / alpha +
                                 std::sqrt(1.0 / (alpha * alpha) + 2.0 / alpha)));
    }

    eta = -psi(t);
    zeta = -psi_slope(t);
    theta = -psi(-s);
    xi = psi_slope(-s);
    p = 1.0 / xi;
    r = 1.0 / zeta;
    t_shift = t - r * eta;
    s_shift = s - p * theta;
    q = t_shift + s_shift;
  }

  double psi(double x) const {
    return -alpha * (std::cosh(x) - 1.0) - lam * (std::exp(x) - x - 1.0);
  }
  double psi_slope(double x) const {
    return -alpha * std::sinh(x) - lam * (std::exp(x) - 1.0);
  }
  double hat(double x) const {
    if (x >= -s_shift && x <= t_shift) return 1.0;
    if (x > t_shift) return std::exp(-eta - zeta * (x - t));
    return std::exp(-theta + xi * (x + s));
  }

  // one standardized draw; *trials accumulates proposal count
  double draw(RngStream& rng, std::size_t* trials) const {
    const double total = p + q + r;
    double cand;
    for (;;) {
      ++*trials;
      const double u = rng.next_u01();
      const double v = rng.next_u01();
      const double w = rng.next_u01();
      if (u < q / total)
        cand = -s_shift + q * v;
      else if (u < (q + r) / total)
        cand = t_shift - r * std::log(v);
      else
        cand = -s_shift + p * std::log(v);
      if (w * hat(cand) <= std::exp(psi(cand))) break;
    }
    const double mode = lam / omega + std::sqrt(1.0 + (lam / omega) * (lam / omega));
    return mode * std::exp(cand);
  }
};

// Marsaglia-Tsang gamma generator, shape k, unit rate.
double gamma_draw(RngStream& rng, double k) {
  if (k < 1.0) {
    const double u = 1.0 - rng.next_u01();
    return gamma_draw(rng, k + 1.0) * std::pow(u, 1.0 / k);
  }
  const double d = k - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double z, v;
    do {
      z = rng.next_normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - rng.next_u01();
    if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
    if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

SampleBatch sample(const GigParams& params, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.method = "gig-devroye";
  batch.values.resize(n);

  const double lam = std::fabs(params.p);
  const double omega = std::sqrt(params.a * params.b);
  const double scale = std::sqrt(params.b / params.a);
  const DevroyeGig sampler(lam, omega);

  std::size_t trials = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(seed, i);
    const double std_draw = sampler.draw(rng, &trials);
    batch.values[i] = (params.p >= 0.0) ? std_draw * scale : scale / std_draw;
  }
  batch.acceptance_rate = static_cast<double>(n) / static_cast<double>(trials);
  return batch;
}

SampleBatch sample(const KummerParams& params, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.values.resize(n);

  const double m = params.a + params.b;
  std::size_t trials = 0;

  if (m >= 0.0) {
    batch.method = "kummer-gamma-rejection";
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng(seed, i);
      double x;
      for (;;) {
        ++trials;
        x = gamma_draw(rng, params.a) / params.c;
        const double log_accept = -m * std::log1p(x);
        if (std::log(1.0 - rng.next_u01()) <= log_accept) break;
      }
      batch.values[i] = x;
    }
  } else {
    // (1+x)^{-m'} with m' = -m > 0 grows; temper a Gamma(a, c/2) envelope
    batch.method = "kummer-tempered-gamma-rejection";
    const double mp = -m;
    const double half_c = 0.5 * params.c;
    const double x_star = std::max(0.0, 2.0 * mp / params.c - 1.0);
    const double log_cap = mp * std::log1p(x_star) - half_c * x_star;
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng(seed, i);
      double x;
      for (;;) {
        ++trials;
        x = gamma_draw(rng, params.a) / half_c;
        const double log_accept = mp * std::log1p(x) - half_c * x - log_cap;
        if (std::log(1.0 - rng.next_u01()) <= log_accept) break;
      }
      batch.values[i] = x;
    }
  }
  batch.acceptance_rate = static_cast<double>(n) / static_cast<double>(trials);
  return batch;
}

}  // namespace steinkit::dist
