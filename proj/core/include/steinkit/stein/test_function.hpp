#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace steinkit::stein {

// Bounded continuous h for the right-hand side h(x) - E h(W) of the Stein
// equation. sup_norm_of_centered is the grid supremum of |h - E h(W)|,
// filled in by the solver once the expectation is known (it is a supremum
// over a 10x refined grid, not a true sup norm).
struct TestFunction {
  std::function<double(double)> h;
  std::optional<double> sup_norm_of_centered;
  std::string smoothness_tag;
};

// Built-in test functions: "const" (h = 1), "exp-decay" (e^{-x}),
// "logistic-step" (logistic ramp centered at alpha with width alpha/10),
// "osc" (sin(x)/(1+x^2) + 2). Throws std::invalid_argument for unknown
// names. alpha is only used by "logistic-step".
TestFunction make_test_function(const std::string& name, double alpha = 1.0);

const std::vector<std::string>& builtin_test_function_names();

}  // namespace steinkit::stein
