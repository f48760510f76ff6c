#pragma once

#include <functional>

namespace steinkit::numerics {

// Brent's bracketing root finder. Requires f(lo) * f(hi) < 0; throws
// std::invalid_argument otherwise. Terminates when the bracket is narrower
// than tol plus a machine-precision floor.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

}  // namespace steinkit::numerics
