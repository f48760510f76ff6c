#include <cmath>
#include <limits>
#include <sstream>

#include "steinkit/stein/engine.hpp"

namespace steinkit::stein {

const std::vector<OperatorFunction>& default_operator_family() {
  static const std::vector<OperatorFunction> family = [] {
    std::vector<OperatorFunction> fam;
    const double lambdas[] = {0.5, 1.0, 2.0, 5.0};
    for (int j = 0; j <= 1; ++j) {
      for (double lam : lambdas) {
        std::ostringstream name;
        name << "x^" << j << "*exp(-x/" << lam << ")/(1+x)";
        if (j == 0) {
          fam.push_back(
              {name.str(),
               [lam](double x) { return std::exp(-x / lam) / (1.0 + x); },
               [lam](double x) {
                 return std::exp(-x / lam) *
                        (-1.0 / (lam * (1.0 + x)) - 1.0 / ((1.0 + x) * (1.0 + x)));
               }});
        } else {
          fam.push_back(
              {name.str(),
               [lam](double x) { return x * std::exp(-x / lam) / (1.0 + x); },
               [lam](double x) {
                 const double opx = 1.0 + x;
                 return std::exp(-x / lam) *
                        (1.0 / opx - x / (lam * opx) - x / (opx * opx));
               }});
        }
      }
    }
    return fam;
  }();
  return family;
}

DiscrepancyReport stein_discrepancy(const dist::SampleBatch& batch,
                                    const dist::SteinPair& pair,
                                    const std::vector<OperatorFunction>& family) {
  const std::size_t n = batch.values.size();
  if (n < 2)
    throw std::invalid_argument("stein_discrepancy: need at least 2 samples");

  DiscrepancyReport report;
  report.n = n;
  report.family_id = pair.family;
  report.statistic = 0.0;

  for (const auto& fn : family) {
    // Welford accumulation in fixed sample order
    double mean = 0.0, m2 = 0.0;
    std::size_t count = 0;
    for (double x : batch.values) {
      const double v = apply_operator(pair, fn.f(x), fn.f_prime(x), x);
      if (std::isnan(v)) {
        std::ostringstream msg;
        msg << "stein_discrepancy: operator evaluation is NaN for '" << fn.name
            << "' at sample value " << x;
        throw NonConvergenceError(msg.str());
      }
      ++count;
      const double delta = v - mean;
      mean += delta / static_cast<double>(count);
      m2 += delta * (v - mean);
    }
    const double variance = m2 / static_cast<double>(n - 1);
    const double se = std::sqrt(variance / static_cast<double>(n));
    report.per_function.push_back({fn.name, mean, se});
    const double ratio = (se > 0.0) ? std::fabs(mean) / se
                                    : (mean == 0.0 ? 0.0
                                                   : std::numeric_limits<double>::infinity());
    report.statistic = std::max(report.statistic, ratio);
  }
  return report;
}

CharacterizationReport characterization_demo(const dist::FamilyParams& params,
                                             std::size_t n, std::uint64_t seed) {
  CharacterizationReport out;
  const dist::SampleBatch batch = dist::sample_for(params, n, seed);
  const dist::SteinPair pair = dist::stein_pair_for(params);
  out.report = stein_discrepancy(batch, pair);
  out.pass = out.report.statistic < out.gate;
  return out;
}

}  // namespace steinkit::stein
