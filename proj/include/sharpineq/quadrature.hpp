#pragma once

#include <cstdint>
#include <functional>

#include "sharpineq/core.hpp"

namespace sharpineq {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 1 << 16;
    // apply a log-graded substitution near the lower endpoint so that
    // integrable power singularities r^sigma, sigma > -1, converge
    bool singular_origin = false;
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;  // internal error estimator, not a strict bound
    int panels = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) panel refinement. Throws ToleranceNotMet
// when the subdivision budget is exhausted with the estimator still above
// max(rel_tol*|I|, abs_tol), NonFinite when f returns a non-finite value in
// a panel interior.
IntegralEstimate integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec);

struct McSpec {
    std::int64_t samples = 1000000;
    std::uint64_t seed = 0;
    double radius_cap = 0.0;  // sampling ball radius; 0 = derive from the profile support
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Monte Carlo oracle for integrals of radial integrands over R^n: uniform
// sampling on the ball of radius radius_cap, volume-weighted mean plus
// standard error. `pointwise` receives the sample radius and must return the
// full n-dimensional integrand value at that radius. Deterministic for a
// given seed: a fixed set of substreams is combined in fixed order.
McEstimate monte_carlo_weighted(const std::function<double(double)>& pointwise, int n,
                                const McSpec& spec);

}  // namespace sharpineq
