#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "steinkit/dist/params_json.hpp"
#include "steinkit/dist/sampling.hpp"
#include "steinkit/dist/stein_pair.hpp"
#include "steinkit/stein/test_function.hpp"

namespace steinkit::stein {

// Thrown when adaptive quadrature fails to reach its tolerance inside the
// subdivision budget; carries the best estimate context in the message.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- operator application -------------------------------------------------

// s(x) f'(x) + tau(x) f(x) for explicit values of f and f' at x.
inline double apply_operator(const dist::SteinPair& pair, double f_at_x,
                             double f_prime_at_x, double x) {
  return pair.s(x) * f_prime_at_x + pair.tau(x) * f_at_x;
}

// Same with callables.
template <class F, class G>
double apply_operator(const dist::SteinPair& pair, F&& f, G&& f_prime, double x) {
  return apply_operator(pair, f(x), f_prime(x), x);
}

// E h(W) by adaptive quadrature of h against the pair's density.
// Throws NonConvergenceError if the quadrature budget is exhausted.
double expectation(const dist::SteinPair& pair, const TestFunction& h,
                   double abs_tol = 1e-10);

// --- Stein equation solver -------------------------------------------------

struct SolveOptions {
  // absolute tolerance scale for the per-point solution integrals
  double quad_abs_tol = 1e-13;
  // E h(W) is computed tighter than the public expectation default because
  // the two-form agreement diagnostic divides its error by s(x) g(x)
  double e_h_abs_tol = 5e-15;
  // relative step of the independent finite-difference derivative used by
  // the residual diagnostic; small enough that the O(h^2) truncation stays
  // below the residual gate even for the logistic-step ramp of width
  // alpha/10, large enough that the per-evaluation quadrature error does not
  // dominate after division by 2h
  double residual_rel_step = 1e-4;
  // grid points with log(s g) below this are masked (s g underflows double)
  double mask_log_sg_floor = -708.0;
  // the secondary integral form is evaluated (for the agreement diagnostic)
  // where s g is within this many e-folds of its grid peak; outside the
  // window the wrong-side integral is catastrophically cancelled
  double agreement_log_window = 9.2;  // ~ 1e4
};

// Solution of s f' + tau f = h - E h(W) on an evaluation grid.
// f comes from whichever integral representation keeps its mass near the
// evaluation point (forward of alpha: integral from 0; beyond: tail
// integral); f' is recovered algebraically from the equation itself.
// residual is |s f_fd' + tau f - (h - e_h)| with an independently
// finite-differenced derivative. masked marks points where s g underflows;
// their f/f'/residual are NaN. forms_agreement is the max absolute
// difference of the two representations over the well-conditioned window
// (agreement_points of them); with constant_c = 0 it checks e_h.
struct SteinSolution {
  std::vector<double> grid;
  std::vector<double> f_values;
  std::vector<double> f_prime_values;
  std::vector<double> residual;
  std::vector<bool> masked;
  double e_h = 0.0;
  double constant_c = 0.0;
  double max_residual = 0.0;
  double forms_agreement = 0.0;
  int agreement_points = 0;
  int masked_count = 0;
};

SteinSolution solve_stein_equation(const dist::SteinPair& pair, TestFunction& h,
                                   std::span<const double> grid,
                                   const SolveOptions& options = {});

// General solution: canonical plus C / (s(x) g(x)). Any C != 0 is unbounded
// as x -> 0 whenever s g vanishes there; the residual diagnostic is only
// meaningful for the canonical part (the added term lies in the kernel of
// the operator but its finite-difference error scales with its magnitude).
SteinSolution solve_with_constant(const dist::SteinPair& pair, TestFunction& h,
                                  double c, std::span<const double> grid,
                                  const SolveOptions& options = {});

// --- uniform bound ----------------------------------------------------------

// M = max of the two normalized tail masses at alpha; for bounded continuous
// h, sup |f_h| <= M * ||h - E h(W)||. Requires monotone tau.
struct BoundReport {
  double alpha = 0.0;
  double left_ratio = 0.0;
  double right_ratio = 0.0;
  double m = 0.0;
};

BoundReport bound_m(const dist::SteinPair& pair);

// --- verification checks ----------------------------------------------------

// Central-difference check of (s g)' = tau g over a grid. The differencing
// step is curvature-aware: h = rel_step * min(x, |s/tau|), since the density
// varies on scale s/|tau| near 0 (much shorter than x for GIG). The relative
// error denominator is floored at 1e-3 * s(x)/x * g(x) so grid points next
// to the zero of tau do not divide by ~0.
struct StructuralReport {
  bool passed = false;
  double max_relative_error = 0.0;
  double worst_x = 0.0;
  double tolerance = 0.0;
  int points = 0;
};

StructuralReport check_structural_identity(const dist::SteinPair& pair,
                                           std::span<const double> grid,
                                           double tol, double rel_step = 1e-5);

// Tail inequalities int_0^x g <= s g / tau (x < alpha) and
// int_x^inf g <= -s g / tau (x > alpha), with 1e-9 quadrature slack and a
// +-1e-6 * max(1, alpha) window excluded around alpha; also checks that
// l(x) = (1/(s g)) int_0^x g is nondecreasing left of alpha and
// u(x) = (1/(s g)) int_x^inf g nonincreasing right of it.
struct LemmaReport {
  bool inequalities_passed = false;
  bool l_monotone = false;
  bool u_monotone = false;
  double max_left_violation = 0.0;   // positive = violated
  double max_right_violation = 0.0;
  int points_checked = 0;
  int points_excluded = 0;
  bool passed() const { return inequalities_passed && l_monotone && u_monotone; }
};

LemmaReport check_lemma_inequalities(const dist::SteinPair& pair,
                                     std::span<const double> grid);

// --- Monte Carlo characterization --------------------------------------------

struct OperatorFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
};

// x^j e^{-x/lambda} / (1+x), j in {0,1}, lambda in {0.5, 1, 2, 5}; bounded,
// differentiable, and s g f -> 0 at both ends for the built-in targets.
const std::vector<OperatorFunction>& default_operator_family();

struct DiscrepancyReport {
  struct PerFunction {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
  };
  std::vector<PerFunction> per_function;
  double statistic = 0.0;  // max_k |estimate_k| / std_error_k
  std::size_t n = 0;
  std::string family_id;
};

// Sample means and standard errors of s(X) f'(X) + tau(X) f(X) over the
// family. Throws std::invalid_argument for n < 2 and NonConvergenceError
// listing offending sample values if operator evaluations produce NaN.
DiscrepancyReport stein_discrepancy(
    const dist::SampleBatch& batch, const dist::SteinPair& pair,
    const std::vector<OperatorFunction>& family = default_operator_family());

struct CharacterizationReport {
  DiscrepancyReport report;
  double gate = 4.0;
  bool pass = false;
};

// Samples the target, runs the discrepancy against its own pair, passes iff
// the statistic is below the 4-sigma gate.
CharacterizationReport characterization_demo(const dist::FamilyParams& params,
                                             std::size_t n, std::uint64_t seed);

// --- grids -------------------------------------------------------------------

std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);
// 400 log-spaced points on [1e-3, 50]
std::vector<double> standard_grid();

}  // namespace steinkit::stein
