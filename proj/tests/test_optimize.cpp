#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "sharpineq/constants.hpp"
#include "sharpineq/optimize.hpp"

using namespace sharpineq;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace

TEST_CASE("objective hand values") {
    // Hardy n=3, p=2: q=2, kappa=2
    Objective hardy = make_objective(hardy_case(3, 2.0));
    CHECK(hardy.evaluate(1.0) == kInf);  // denominator hits zero at the boundary
    CHECK(hardy.evaluate(1.0 / std::sqrt(2.0)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(hardy.evaluate(-1.0) == kInf);
    CHECK(hardy.evaluate(0.0) == kInf);

    // b=a+1 edge with n=3, a=0: kappa=1, f(alpha)=1/(alpha^2-alpha^4)
    Objective edge = make_objective(ckn_plus1_case(3, 0.0));
    CHECK(edge.evaluate(1.0 / std::sqrt(2.0)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(edge.evaluate(1.0) == kInf);

    // 1d: f(1/2) with p=2 (q=2) is 1/((1/4)(3/4)) = 16/3
    Objective one = make_objective(hardy_1d_case(2.0));
    CHECK(one.evaluate(0.5) == doctest::Approx(16.0 / 3.0).epsilon(1e-12));
    CHECK(one.evaluate(1.0) == kInf);

    CHECK_THROWS_AS(make_objective(ckn_case(3, 0.0, 0.5)), DomainError);
}

TEST_CASE("objective returns the infinity sentinel exactly on the infeasible set") {
    Objective hardy = make_objective(hardy_case(4, 3.0));
    const double hi = hardy.feasible_hi;
    CHECK(hardy.evaluate(hi) == kInf);
    CHECK(hardy.evaluate(hi * (1.0 + 1e-12)) == kInf);
    CHECK(std::isfinite(hardy.evaluate(hi * (1.0 - 1e-9))));

    Objective one = make_objective(hardy_1d_case(3.0));
    CHECK(one.evaluate(1.0) == kInf);
    CHECK(one.evaluate(2.0) == kInf);
    CHECK(std::isfinite(one.evaluate(0.999999)));
}

TEST_CASE("scalar minimizer on the quadratic test") {
    Objective quad;
    quad.arity = 1;
    quad.evaluate = [](double x) { return (x - 2.0) * (x - 2.0); };
    OptimizationResult res = minimize_scalar(quad, std::pair{0.0, 5.0}, 1e-10);
    CHECK(res.converged);
    CHECK(std::abs(res.argmin[0] - 2.0) <= 1e-8);
    CHECK(res.min_value <= 1e-16);
}

TEST_CASE("hardy objective minimum matches the closed form") {
    OptimizationResult res = minimize_scalar(make_objective(hardy_case(3, 2.0)));
    CHECK(std::abs(res.argmin[0] - 1.0 / std::sqrt(2.0)) <= 1e-8);
    CHECK(rel(res.min_value, 4.0) <= 1e-10);
    CHECK(res.second_difference > 0.0);
}

TEST_CASE("grids: hardy and both ckn edge objectives match closed forms to 1e-8") {
    // Hardy, both n-dimensional variants
    const std::pair<int, double> hardy_grid[] = {{3, 2.0}, {4, 3.0}, {5, 2.5}, {7, 4.0},
                                                 {2, 3.0}, {3, 5.0}};
    for (auto [n, p] : hardy_grid) {
        InequalityCase c = p < n ? hardy_case(n, p) : hardy_supercritical_case(n, p);
        OptimizationResult res = minimize_scalar(make_objective(c));
        const double expect = std::pow(p / std::abs(n - p), p);
        CHECK(std::abs(res.min_value - expect) <= 1e-8 * expect);
        CHECK(res.second_difference > 0.0);
    }
    // b = a+1 edge
    const std::pair<int, double> edge_grid[] = {{3, 0.0}, {4, 0.5}, {5, -1.0}, {6, 1.5}};
    for (auto [n, a] : edge_grid) {
        OptimizationResult res = minimize_scalar(make_objective(ckn_plus1_case(n, a)));
        const double expect = 4.0 / std::pow(n - 2.0 - 2.0 * a, 2);
        CHECK(std::abs(res.min_value - expect) <= 1e-8 * expect);
        CHECK(res.second_difference > 0.0);
    }
    // b = a edge, both signs of a
    const std::pair<int, double> equal_grid[] = {{3, -0.5}, {4, 0.6}, {5, -2.0}, {5, 1.0}};
    for (auto [n, a] : equal_grid) {
        OptimizationResult res = minimize_scalar(make_objective(ckn_equal_case(n, a)));
        const double K = sobolev_sharp_constant(n, 2.0);
        const double C1 = 4.0 / std::pow(n - 2.0 - 2.0 * a, 2);
        const double expect = K * K * std::pow(1.0 + std::abs(a) * std::sqrt(C1), 2);
        CHECK(std::abs(res.min_value - expect) <= 1e-8 * expect);
        CHECK(res.second_difference > 0.0);
    }
}

TEST_CASE("hardy1d: numeric argmin is q^{-1/q}, the value is (p/(p-1))^p") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const double q = p / (p - 1.0);
        OptimizationResult res = minimize_scalar(make_objective(hardy_1d_case(p)));
        CHECK(std::abs(res.argmin[0] - std::pow(q, -1.0 / q)) <= 1e-8);
        const double expect = std::pow(p / (p - 1.0), p);
        CHECK(std::abs(res.min_value - expect) <= 1e-8 * expect);
    }
}

TEST_CASE("bivariate minimizer on the bowl test") {
    Objective bowl;
    bowl.arity = 2;
    bowl.evaluate2 = [](double x, double y) {
        return (x - 1.0) * (x - 1.0) + (y - 3.0) * (y - 3.0);
    };
    OptimizationResult res = minimize_bivariate(bowl, {}, 1e-12);
    CHECK(res.converged);
    CHECK(std::abs(res.argmin[0] - 1.0) <= 1e-5);
    CHECK(std::abs(res.argmin[1] - 3.0) <= 1e-5);
    CHECK(res.min_value <= 1e-9);
    REQUIRE(res.hessian_det.has_value());
    CHECK(*res.hessian_det > 0.0);
    CHECK(res.hessian_eigenvalues[0] > 0.0);
}

TEST_CASE("rellich lambda^2 variant at n=13 hits the derived value, not the printed one") {
    InequalityCase c = rellich_case(13);
    Objective obj = make_objective(c, RellichVariant::LambdaSquaredHalf);

    // independent oracle: dense grid search over (lambda^2, mu^2), refined once
    const double M = 4.0 / 81.0;
    double best = kInf;
    double s_lo = 1e-3, s_hi = 1e3, t_lo = 1e-3, t_hi = 1e3;
    for (int round = 0; round < 6; ++round) {
        double best_s = s_lo, best_t = t_lo;
        const int N = 200;
        for (int i = 0; i <= N; ++i) {
            const double s = s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / N);
            for (int j = 0; j <= N; ++j) {
                const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(j) / N);
                const double den = 1.0 - M / (2.0 * s) - M / t - t;
                if (den <= 0.0) continue;
                const double v = M * s / 2.0 / den;
                if (v < best) {
                    best = v;
                    best_s = s;
                    best_t = t;
                }
            }
        }
        const double fs = std::pow(s_hi / s_lo, 1.0 / N);
        const double ft = std::pow(t_hi / t_lo, 1.0 / N);
        s_lo = best_s / fs;
        s_hi = best_s * fs;
        t_lo = best_t / ft;
        t_hi = best_t * ft;
    }
    const double derived = 16.0 / 2025.0;  // M^2/(1-2 sqrt(M))^2
    CHECK(std::abs(best - derived) <= 1e-7 * derived);

    OptimizationResult res = minimize_bivariate(obj);
    CHECK(std::abs(res.min_value - derived) <= 1e-6 * derived);
    CHECK(std::abs(res.min_value - best) <= 1e-6 * derived);
    const double printed = 16.0 / 13689.0;
    CHECK(std::abs(res.min_value - printed) > 0.1 * printed);

    // the literal lambda/2 prefactor misses the quoted value as well
    OptimizationResult lit =
        minimize_bivariate(make_objective(c, RellichVariant::LambdaHalf));
    CHECK(std::abs(lit.min_value - printed) > 0.1 * printed);
    CHECK(std::abs(lit.min_value - res.min_value) > 0.1 * res.min_value);
}

TEST_CASE("rellich feasible region is empty for 4 < n <= 8") {
    for (int n : {5, 6, 7, 8}) {
        for (RellichVariant v : {RellichVariant::LambdaSquaredHalf, RellichVariant::LambdaHalf}) {
            CHECK_THROWS_AS(minimize_bivariate(make_objective(rellich_case(n), v)),
                            NoFeasiblePoint);
        }
    }
    // and nonempty for n = 9
    CHECK_NOTHROW(minimize_bivariate(make_objective(rellich_case(9))));
}

TEST_CASE("crosscheck: agreements stay silent, the printed 1d argmin is flagged") {
    CHECK(crosscheck_closed_forms(hardy_case(3, 2.0)).discrepancy.empty());
    CHECK(crosscheck_closed_forms(ckn_plus1_case(4, 0.5)).discrepancy.empty());
    CHECK(crosscheck_closed_forms(ckn_equal_case(3, -0.5)).discrepancy.empty());

    OptimizationResult equal_edge = crosscheck_closed_forms(ckn_equal_case(3, -0.5));
    CHECK(std::abs(equal_edge.argmin[0] - 1.0) <= 1e-6);  // (1/C_{a+1})^{1/4} with C = 1

    OptimizationResult one = crosscheck_closed_forms(hardy_1d_case(2.0));
    CHECK(!one.discrepancy.empty());
    CHECK(one.closed_form_argmin[0] == doctest::Approx(0.25));  // printed q^{-q}
    CHECK(std::abs(one.argmin[0] - std::pow(2.0, -0.5)) <= 1e-8);
    CHECK(rel(one.min_value, 4.0) <= 1e-10);  // printed minimum is confirmed

    OptimizationResult rellich = crosscheck_closed_forms(rellich_case(13));
    CHECK(!rellich.discrepancy.empty());
    CHECK(*rellich.closed_form_value == doctest::Approx(16.0 / 13689.0));
}

TEST_CASE("minimizer error paths") {
    Objective empty;
    empty.arity = 1;
    empty.evaluate = [](double) { return kInf; };
    CHECK_THROWS_AS(minimize_scalar(empty), NoFeasiblePoint);

    Objective quad;
    quad.arity = 1;
    quad.evaluate = [](double x) { return (x - 2.0) * (x - 2.0); };
    CHECK_THROWS_AS(minimize_scalar(quad, std::pair{0.0, 5.0}, 1e-10, 4), NonConvergence);
    CHECK_THROWS_AS(minimize_bivariate(quad), DomainError);  // wrong arity
}
