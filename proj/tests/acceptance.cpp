// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sharpineq/cli.hpp"
#include "sharpineq/constants.hpp"
#include "sharpineq/fields.hpp"
#include "sharpineq/optimize.hpp"
#include "sharpineq/verify.hpp"

using namespace sharpineq;

namespace {

struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;  // empty string = pass, otherwise failure detail
};

std::string check(bool ok, const std::string& detail) { return ok ? "" : detail; }

std::string fmtf(const char* f, double a, double b = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel_err(double x, double y) { return std::abs(x - y) / std::abs(y); }

// ---- criterion 1: closed-form constant table --------------------------------
std::string c1_constant_table() {
    struct Row {
        double got, expect;
        const char* label;
    };
    const Row rows[] = {
        {hardy_sharp_constant(hardy_case(3, 2.0)).value, 4.0, "hardy(3,2)"},
        {hardy_sharp_constant(hardy_supercritical_case(2, 3.0)).value, 27.0, "hardy-super(2,3)"},
        {hardy_sharp_constant(hardy_1d_case(2.0)).value, 4.0, "hardy1d(2)"},
        {ckn_edge_plus1_constant(5, 0.0).value, 4.0 / 9.0, "C_{a+1}(5,0)"},
        {rellich_sharp_constant(5).value, 0.64, "rellich(5)"},
        {rellich_sharp_constant(8).value, 0.015625, "rellich(8)"},
    };
    for (const Row& r : rows) {
        if (std::abs(r.got - r.expect) > 1e-14 * std::max(1.0, std::abs(r.expect)))
            return std::string(r.label) + fmtf(": got %.17g, want %.17g", r.got, r.expect);
    }
    return "";
}

// ---- criterion 2: optimizer vs closed forms over a 12-point grid ------------
std::string c2_optimizer_grid() {
    int points = 0;
    // Hardy, subcritical and supercritical
    for (auto [n, p] : {std::pair<int, double>{3, 2.0}, {4, 3.0}, {5, 2.5}, {2, 3.0}}) {
        InequalityCase c = p < n ? hardy_case(n, p) : hardy_supercritical_case(n, p);
        OptimizationResult res = minimize_scalar(make_objective(c));
        const double expect = std::pow(p / std::abs(n - p), p);
        if (rel_err(res.min_value, expect) > 1e-8)
            return fmtf("hardy n=%g p=%g off the closed form", n, p);
        ++points;
    }
    // b = a+1 edge
    for (auto [n, a] : {std::pair<int, double>{3, 0.0}, {4, 0.5}, {5, -1.0}, {6, 1.5}}) {
        OptimizationResult res = minimize_scalar(make_objective(ckn_plus1_case(n, a)));
        const double expect = 4.0 / std::pow(n - 2.0 - 2.0 * a, 2);
        if (rel_err(res.min_value, expect) > 1e-8)
            return fmtf("plus1-edge objective n=%g a=%g off the closed form", n, a);
        ++points;
    }
    // b = a edge, both signs
    for (auto [n, a] : {std::pair<int, double>{3, -0.5}, {4, 0.6}, {5, -2.0}, {6, 1.0}}) {
        OptimizationResult res = minimize_scalar(make_objective(ckn_equal_case(n, a)));
        const double K = sobolev_sharp_constant(n, 2.0);
        const double C1 = 4.0 / std::pow(n - 2.0 - 2.0 * a, 2);
        const double expect = K * K * std::pow(1.0 + std::abs(a) * std::sqrt(C1), 2);
        if (rel_err(res.min_value, expect) > 1e-8)
            return fmtf("equal-plus1-edge objective n=%g a=%g off the closed form", n, a);
        ++points;
    }
    return check(points == 12, "grid size is not 12");
}

// ---- criterion 3: typo detections -------------------------------------------
std::string c3_typo_detections() {
    // (i) one-dimensional case: numeric argmin q^{-1/q}, printed argmin q^{-q} rejected
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const double q = p / (p - 1.0);
        OptimizationResult res = minimize_scalar(make_objective(hardy_1d_case(p)));
        if (std::abs(res.argmin[0] - std::pow(q, -1.0 / q)) > 1e-8)
            return fmtf("1d argmin at p=%g is not q^{-1/q}", p);
        const double value = std::pow(p / (p - 1.0), p);
        if (rel_err(res.min_value, value) > 1e-8)
            return fmtf("1d minimum at p=%g is not (p/(p-1))^p", p);
        OptimizationResult crosschecked = crosscheck_closed_forms(hardy_1d_case(p));
        if (crosschecked.discrepancy.empty())
            return fmtf("printed 1d argmin at p=%g was not flagged", p);
    }

    // (ii) Rellich lambda^2 variant, n = 13: grid-search oracle 16/2025 != printed 16/13689
    {
        const double M = 4.0 / 81.0;
        double best = std::numeric_limits<double>::infinity();
        double s_lo = 1e-3, s_hi = 1e3, t_lo = 1e-3, t_hi = 1e3;
        for (int round = 0; round < 6; ++round) {
            double bs = s_lo, bt = t_lo;
            const int N = 160;
            for (int i = 0; i <= N; ++i) {
                const double s = s_lo * std::pow(s_hi / s_lo, static_cast<double>(i) / N);
                for (int j = 0; j <= N; ++j) {
                    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(j) / N);
                    const double den = 1.0 - M / (2.0 * s) - M / t - t;
                    if (den <= 0.0) continue;
                    const double v = M * s / 2.0 / den;
                    if (v < best) {
                        best = v;
                        bs = s;
                        bt = t;
                    }
                }
            }
            const double fs = std::pow(s_hi / s_lo, 1.0 / N), ft = std::pow(t_hi / t_lo, 1.0 / N);
            s_lo = bs / fs;
            s_hi = bs * fs;
            t_lo = bt / ft;
            t_hi = bt * ft;
        }
        const double derived = 16.0 / 2025.0;
        if (rel_err(best, derived) > 1e-6)
            return fmtf("grid oracle %.12g is off 16/2025", best);
        OptimizationResult res =
            minimize_bivariate(make_objective(rellich_case(13), RellichVariant::LambdaSquaredHalf));
        if (rel_err(res.min_value, derived) > 1e-6)
            return fmtf("numeric minimum %.12g is off 16/2025", res.min_value);
        const double printed = 16.0 / 13689.0;
        if (rel_err(res.min_value, printed) < 0.5)
            return "numeric minimum unexpectedly matches the printed value";
        OptimizationResult crosschecked = crosscheck_closed_forms(rellich_case(13));
        if (crosschecked.discrepancy.empty()) return "Rellich discrepancy was not flagged";
    }

    // (iii) empty feasible region for n in {5,6,7,8}, both variants
    for (int n : {5, 6, 7, 8}) {
        for (RellichVariant v : {RellichVariant::LambdaSquaredHalf, RellichVariant::LambdaHalf}) {
            bool threw = false;
            try {
                minimize_bivariate(make_objective(rellich_case(n), v));
            } catch (const NoFeasiblePoint&) {
                threw = true;
            }
            if (!threw) return fmtf("feasible region unexpectedly nonempty at n=%g", n);
        }
    }
    return "";
}

// ---- criterion 4: inequality battery -----------------------------------------
std::string c4_battery() {
    QuadratureSpec spec;
    const auto battery = cli::standard_battery();
    if (battery.size() < 25) return "battery has fewer than 25 case/profile pairs";
    int violations = 0;
    for (const auto& item : battery) {
        VerificationReport rep = verify_case(item.inequality_case, item.profile, spec);
        if (rep.ratio > 1.0 || rep.margin <= 0.0) ++violations;
    }
    return check(violations == 0, fmtf("%g violations across the battery", violations));
}

// ---- criterion 5: sharpness sweeps -------------------------------------------
std::string c5_sweeps() {
    QuadratureSpec spec;
    for (const InequalityCase& c : {hardy_case(3, 2.0), ckn_plus1_case(5, 0.5)}) {
        SweepSeries series = sweep(c, canonical_schedule(c), spec);
        for (std::size_t i = 1; i < series.ratios.size(); ++i) {
            if (!(series.ratios[i] > series.ratios[i - 1]))
                return std::string(variant_name(c.variant())) +
                       fmtf(": ratios not strictly increasing at entry %g",
                            static_cast<double>(i));
        }
        if (series.sup_ratio < 0.98)
            return std::string(variant_name(c.variant())) +
                   fmtf(": sup_ratio %.6f below 0.98", series.sup_ratio);
        if (series.sup_ratio > 1.0)
            return std::string(variant_name(c.variant())) + ": sup_ratio exceeds 1";
    }
    return "";
}

// ---- criterion 6: radial-reduction oracle ------------------------------------
std::string c6_mc_oracle() {
    QuadratureSpec qspec;
    McSpec mspec;
    mspec.samples = 1000000;
    std::uint64_t seed = 0x5ee0ULL;
    std::vector<InequalityCase> cases;
    for (int n = 3; n <= 6; ++n) cases.push_back(hardy_case(n, 2.0));
    for (int n = 3; n <= 6; ++n) cases.push_back(ckn_plus1_case(n, -0.5));
    cases.push_back(rellich_case(5));
    cases.push_back(rellich_case(6));
    for (const InequalityCase& c : cases) {
        RadialProfile prof = RadialProfile::near_extremal_for(c, 0.3, 1.0, 3.0);
        FunctionalSides sides = functional_sides(c, prof, qspec);
        for (int side = 0; side < 2; ++side) {
            mspec.seed = seed++;
            mspec.radius_cap = prof.support_hi();
            auto f = [&](double r) { return pointwise_integrand(c, prof, side, r); };
            McEstimate e = monte_carlo_weighted(f, c.n(), mspec);
            const double ref = side == 0 ? sides.lhs_integral : sides.rhs_integral;
            if (std::abs(e.value - ref) > 3.0 * e.std_error)
                return std::string(variant_name(c.variant())) +
                       fmtf(" n=%g side=%g outside 3 std errors", c.n(), side);
        }
    }
    return "";
}

// ---- criterion 7: divergence identities --------------------------------------
std::string c7_divergence() {
    std::mt19937_64 rng(0xD1CE);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    struct Grid {
        FieldKind kind;
        int n;
        double exponent;
    };
    const Grid grids[] = {
        {FieldKind::HardyV, 3, 2.0}, {FieldKind::HardyV, 4, 3.0}, {FieldKind::HardyV, 5, 2.5},
        {FieldKind::HardyV, 2, 3.0}, {FieldKind::CknW, 3, 1.0},   {FieldKind::CknW, 5, 1.5},
        {FieldKind::CknW, 4, 0.8},   {FieldKind::CknW, 6, -0.5},
    };
    for (const Grid& g : grids) {
        RadialVectorField field = make_field(g.kind, g.n, g.exponent);
        for (int i = 0; i < 200; ++i) {
            std::vector<double> x(g.n);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& xi : x) {
                    xi = normal(rng);
                    norm += xi * xi;
                }
                norm = std::sqrt(norm);
            } while (norm == 0.0);
            const double r = std::pow(10.0, -1.0 + 2.0 * unif(rng));
            for (double& xi : x) xi *= r / norm;
            const double fd = divergence_fd(field, x);
            const double exact = divergence_exact(field, x);
            if (std::abs(fd - exact) > 1e-5 * (1.0 + std::abs(exact)))
                return fmtf("divergence identity off at n=%g exponent=%g", g.n, g.exponent);
        }
    }
    return "";
}

// ---- criterion 8: exponent-relation identities --------------------------------
std::string c8_exponent_relations() {
    std::mt19937_64 rng(0xABBA);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 3 + static_cast<int>(unif(rng) * 8);
        const double a = -2.5 + unif(rng) * ((n - 2.0) / 2.0 - 0.05 + 2.5);
        const double theta = unif(rng);
        const double b = b_from_theta(n, a, theta);
        InequalityCase c = ckn_case(n, a, b);
        const double p = c.p();
        const double two_star = 2.0 * n / (n - 2.0);
        if (std::abs(p - (2.0 * (1.0 - theta) + two_star * theta)) > 1e-12 * p)
            return "EXP1 identity failed";
        const double bp = 2.0 * (1.0 - theta) * (a + 1.0) + two_star * theta * a;
        if (std::abs(c.b() * p - bp) > 1e-12 * std::max(1.0, std::abs(bp)))
            return "EXP3 identity failed";
        if (std::abs(theta_from_b(n, a, b) - theta) > 1e-12) return "EXP2 inversion failed";
    }
    return "";
}

// ---- criterion 9: gamma / sobolev suite ---------------------------------------
std::string c9_gamma_suite() {
    for (double s = 0.5; s <= 30.0; s += 0.0625) {
        const double lhs = gamma_fn(s + 1.0);
        if (std::abs(lhs - s * gamma_fn(s)) > 1e-12 * lhs)
            return fmtf("gamma recurrence off at s=%g", s);
    }
    double expect = std::sqrt(M_PI);
    for (int k = 0; k <= 10; ++k) {
        if (rel_err(gamma_fn(k + 0.5), expect) > 1e-12)
            return fmtf("half-integer gamma off at k=%g", static_cast<double>(k));
        expect *= k + 0.5;
    }
    if (rel_err(sobolev_sharp_constant(3, 2.0), 0.2466789894357854071352) > 1e-10)
        return "K(3,2) off the multiprecision oracle";
    if (rel_err(sobolev_sharp_constant(4, 2.0), 0.1560946028488889758387) > 1e-10)
        return "K(4,2) off the multiprecision oracle";
    return "";
}

// ---- criterion 10: byte-identical reports -------------------------------------
std::string c10_determinism() {
    const std::string path = "acceptance_det.json";
    auto run_once = [&] {
        if (cli::run({"all", "--seed", "7", "--out", path}) != 0) return std::string();
        std::ifstream f(path, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    };
    const std::string first = run_once();
    const std::string second = run_once();
    std::remove(path.c_str());
    if (first.empty() || second.empty()) return "battery run failed or produced no report";
    return check(first == second, "reports are not byte-identical");
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "constant table (closed forms, 1e-14)", c1_constant_table},
        {2, "optimizer vs closed forms (12-point grid, 1e-8)", c2_optimizer_grid},
        {3, "typo detections (1d argmin, Rellich value, empty region)", c3_typo_detections},
        {4, "inequality battery (>= 25 pairs, ratio <= 1, margin > 0)", c4_battery},
        {5, "sharpness sweeps (strictly increasing, sup >= 0.98)", c5_sweeps},
        {6, "radial-reduction Monte Carlo oracle (3 std errors)", c6_mc_oracle},
        {7, "divergence identities (1e-5, 200 points per pair)", c7_divergence},
        {8, "exponent relations (1e-12, randomized grid)", c8_exponent_relations},
        {9, "gamma and Sobolev constant suite (1e-12 / 1e-10)", c9_gamma_suite},
        {10, "byte-identical reports across reruns", c10_determinism},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (detail.empty()) {
            std::printf("PASS  criterion %2d: %s  (%.0f ms)\n", c.id, c.name, ms);
        } else {
            std::printf("FAIL  criterion %2d: %s  (%.0f ms)  -- %s\n", c.id, c.name, ms,
                        detail.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
