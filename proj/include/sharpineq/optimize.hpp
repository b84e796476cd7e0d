#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sharpineq/core.hpp"

namespace sharpineq {

// Selects which prefactor the Rellich auxiliary objective uses. The printed
// form carries M lambda/2; collecting the Young terms in the derivation
// yields M lambda^2/2, which is the default.
enum class RellichVariant { LambdaSquaredHalf, LambdaHalf };

// Auxiliary objective extracted from one of the proofs. evaluate() returns
// +infinity exactly where the denominator of the printed formula is <= 0.
struct Objective {
    int arity = 1;
    std::function<double(double)> evaluate;
    std::function<double(double, double)> evaluate2;
    double feasible_lo = 0.0;            // univariate feasible interval
    double feasible_hi = 0.0;            // +inf when unbounded
    std::string feasible_region;
    InequalityCase params;
};

Objective make_objective(const InequalityCase& c,
                         RellichVariant variant = RellichVariant::LambdaSquaredHalf);

struct OptimizationResult {
    std::vector<double> argmin;
    double min_value = 0.0;
    int evaluations = 0;
    bool converged = false;
    std::vector<double> closed_form_argmin;     // quoted closed-form minimizer, if any
    std::optional<double> closed_form_value;    // quoted closed-form minimum, if any
    std::string discrepancy;                    // empty when numeric and printed agree
    double second_difference = 0.0;             // discrete curvature at the argmin
    std::optional<double> hessian_det;          // bivariate only
    std::vector<double> hessian_eigenvalues;    // bivariate only
};

// Brent minimization with deterministic geometric auto-bracketing
// (lambda = 2^k, k in [-40, 40], smallest finite triple kept). tol is the
// absolute tolerance on the argmin.
OptimizationResult minimize_scalar(const Objective& obj,
                                   std::optional<std::pair<double, double>> bracket = {},
                                   double tol = 1e-10, int max_evaluations = 10000);

// Derivative-free Nelder-Mead in log coordinates restarted from up to 8
// scattered feasible seeds found by a deterministic grid scan; the best run
// wins, ties broken by the smaller first coordinate. Also reports the
// finite-difference Hessian at the argmin. Throws NoFeasiblePoint when the
// scan finds no finite value.
OptimizationResult minimize_bivariate(const Objective& obj,
                                      std::optional<std::array<double, 2>> init = {},
                                      double tol = 1e-10, int max_evaluations = 10000);

// Runs the numeric minimizer for the case's objective and compares against
// the quoted closed-form minimizer/minimum, filling the discrepancy text when
// they disagree beyond tol (relative).
OptimizationResult crosscheck_closed_forms(const InequalityCase& c, double tol = 1e-6,
                                           RellichVariant variant = RellichVariant::LambdaSquaredHalf);

}  // namespace sharpineq
