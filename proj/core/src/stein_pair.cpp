#include "steinkit/dist/stein_pair.hpp"

#include <stdexcept>

namespace steinkit::dist {

double tau_zero(const SteinPair& pair) {
  if (!pair.monotone_tau)
    throw std::domain_error(
        "tau_zero: tau is not decreasing on (0,inf) for " + pair.family +
        "; the bound theory requires p <= -1 (GIG) or 1-b-c <= 0 (Kummer)");
  if (!pair.alpha)
    throw std::domain_error("tau_zero: no positive root recorded for " +
                            pair.family);
  return *pair.alpha;
}

}  // namespace steinkit::dist
