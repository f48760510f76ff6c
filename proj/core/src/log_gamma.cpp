#include "steinkit/specfun/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steinkit::specfun {

namespace {

// Lanczos coefficients, g = 7, n = 9 (Godfrey's tableau).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kPi = 3.14159265358979323846;

double lanczos_log_gamma_pos(double x) {
  // valid for x > 0.5
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (int i = 1; i < 9; ++i) series += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: x must be positive");
  if (x < 0.5) {
    // reflection keeps the Lanczos argument away from the small-x pole
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma_pos(1.0 - x);
  }
  return lanczos_log_gamma_pos(x);
}

namespace detail {

double log_gamma_signed(double x, int* sign) {
  if (x > 0.0) {
    *sign = 1;
    return log_gamma(x);
  }
  if (x == std::floor(x)) {
    *sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double s = std::sin(kPi * x);
  *sign = s > 0.0 ? 1 : -1;
  return std::log(kPi / std::fabs(s)) - log_gamma(1.0 - x);
}

double reciprocal_gamma(double x) {
  int sign = 0;
  const double lg = log_gamma_signed(x, &sign);
  if (sign == 0) return 0.0;
  return sign * std::exp(-lg);
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
  double result = 0.0;
  while (x < 8.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic series with Bernoulli coefficients
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  result -= inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                            inv2 * (1.0 / 252.0 +
                                    inv2 * (-1.0 / 240.0 +
                                            inv2 * (1.0 / 132.0 +
                                                    inv2 * (-691.0 / 32760.0 +
                                                            inv2 * (1.0 / 12.0)))))));
  return result;
}

}  // namespace detail

}  // namespace steinkit::specfun
