#pragma once

#include "steinkit/specfun/result.hpp"

namespace steinkit::specfun {

// Tricomi confluent hypergeometric function of the second kind U(a, b, z)
// (also written psi(a, b; z)), a > 0, z > 0, real b. Returned in scaled
// form; see SpecfunResult.
//
// Regimes, selected by argument and by a per-route accuracy estimate:
//   - exact integer b: logarithmic series (DLMF 13.2.9), small/moderate z;
//   - non-integer b, small z: connection formula through two 1F1 series
//     (DLMF 13.2.42) with cancellation tracking;
//   - large z: Poincare asymptotic series with optimal truncation;
//   - everything else (and any route whose tracked rounding amplification
//     exceeds the accuracy budget): adaptive quadrature of the Laplace
//     representation, scaled by the integrand peak.
// b > 1 is first reduced by the Kummer transformation
// U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z) whenever a-b+1 > 0.
//
// Throws std::domain_error for a <= 0 or z <= 0.
SpecfunResult tricomi_u(double a, double b, double z);

}  // namespace steinkit::specfun
