#include "sharpineq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace sharpineq {

VerificationReport verify_case(const InequalityCase& c, const RadialProfile& profile,
                               const QuadratureSpec& quad_spec,
                               const std::optional<McSpec>& mc_spec) {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.inequality_case = c;
    rep.profile = profile.descriptor();
    FunctionalSides sides = functional_sides(c, profile, quad_spec);
    if (sides.rhs == 0.0)
        throw DomainError("verify_case: the profile is identically zero on its support");
    rep.lhs = sides.lhs;
    rep.rhs = sides.rhs;
    rep.constant = sharp_constant(c);
    rep.ratio = rep.lhs / (rep.constant.value * rep.rhs);
    rep.margin = 1.0 - rep.ratio;
    rep.quadrature = {sides.lhs_error, sides.rhs_error, sides.lhs_panels, sides.rhs_panels};
    rep.ratio_exceeds_one = rep.ratio > 1.0 + 1e-9;

    if (mc_spec) {
        McSpec ms = *mc_spec;
        if (!(ms.radius_cap > 0.0)) ms.radius_cap = profile.support_hi();
        if (ms.radius_cap < profile.support_hi())
            throw DomainError("verify_case: radius_cap does not cover the profile support");
        rep.seed = ms.seed;
        McCrosscheck mc;
        McSpec lhs_spec = ms;
        McSpec rhs_spec = ms;
        rhs_spec.seed = ms.seed ^ 0x517cc1b727220a95ULL;  // independent stream per side
        auto lhs_f = [&](double r) { return pointwise_integrand(c, profile, 0, r); };
        auto rhs_f = [&](double r) { return pointwise_integrand(c, profile, 1, r); };
        McEstimate le = monte_carlo_weighted(lhs_f, c.n(), lhs_spec);
        McEstimate re = monte_carlo_weighted(rhs_f, c.n(), rhs_spec);
        mc.lhs_estimate = le.value;
        mc.lhs_std_error = le.std_error;
        mc.rhs_estimate = re.value;
        mc.rhs_std_error = re.std_error;
        mc.lhs_reference = sides.lhs_integral;
        mc.rhs_reference = sides.rhs_integral;
        mc.lhs_within_3se = std::abs(le.value - sides.lhs_integral) <= 3.0 * le.std_error;
        mc.rhs_within_3se = std::abs(re.value - sides.rhs_integral) <= 3.0 * re.std_error;
        rep.mc = mc;
    }
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<ScheduleEntry> canonical_schedule(const InequalityCase& c) {
    const double gamma = case_gamma(c);
    // widest window such that profile derivative evaluations stay inside
    // double range: |g'| ~ r_in^{-(1+|gamma|)}, |g''| ~ r_in^{-(2+|gamma|)}
    const double deriv_order = c.variant() == Variant::Rellich ? 2.0 : 1.0;
    double exp_cap = 300.0 / (deriv_order + std::max(std::abs(gamma), 0.5));
    // the one-dimensional case accumulates eta on a composite mesh whose
    // resolution budget bounds the usable window
    if (c.variant() == Variant::Hardy1D) exp_cap = std::min(exp_cap, 30.0);
    static const std::pair<double, double> ladder[] = {
        {0.3, 2},    {0.15, 4},    {0.08, 8},    {0.04, 16},   {0.02, 32},
        {0.01, 64},  {0.005, 100}, {0.002, 140}, {0.001, 170}, {0.0005, 190},
        {0.0002, 200}, {0.0001, 200}, {0.00005, 200},
    };
    std::vector<ScheduleEntry> out;
    for (const auto& [eps, e_raw] : ladder) {
        const double e = std::min(e_raw, std::floor(exp_cap));
        ScheduleEntry s;
        s.family = ProfileFamily::NearExtremal;
        s.eps = eps;
        s.r_in = std::pow(10.0, -e);
        s.r_out = std::pow(10.0, e);
        out.push_back(s);
    }
    return out;
}

SweepSeries sweep(const InequalityCase& c, std::span<const ScheduleEntry> schedule,
                  const QuadratureSpec& quad_spec) {
    if (schedule.empty()) throw DomainError("sweep: schedule must not be empty");
    SweepSeries series;
    series.inequality_case = c;
    const double constant = sharp_constant(c).value;
    for (const ScheduleEntry& entry : schedule) {
        RadialProfile prof =
            entry.family == ProfileFamily::Mollifier
                ? RadialProfile::mollifier(entry.R)
                : RadialProfile::near_extremal_for(c, entry.eps, entry.r_in, entry.r_out);
        FunctionalSides sides = functional_sides(c, prof, quad_spec);
        SweepEntryResult r;
        r.entry = entry;
        r.lhs = sides.lhs;
        r.rhs = sides.rhs;
        r.ratio = sides.lhs / (constant * sides.rhs);
        r.margin = 1.0 - r.ratio;
        series.entries.push_back(r);
        series.ratios.push_back(r.ratio);
    }
    series.sup_ratio = *std::max_element(series.ratios.begin(), series.ratios.end());
    return series;
}

HolderReport holder_split_check(int n, double a, double theta, const RadialProfile& profile,
                                const QuadratureSpec& quad_spec) {
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("holder_split_check: theta must satisfy 0 < theta < 1 "
                          "(the endpoints are the edge cases)");
    const double b = b_from_theta(n, a, theta);
    InequalityCase c = ckn_case(n, a, b);
    const double p = c.p();
    const double two_star = 2.0 * n / (n - 2.0);

    // raw weighted integrals of |u|^p r^{-bp}, |u|^2 r^{-2(a+1)}, |u|^{2*} r^{-2* a}
    auto weighted = [&](double power, double weight_exp) {
        const double w = n - 1.0 - weight_exp;
        if (profile.support_lo() == 0.0 && w <= -1.0)
            throw IntegrabilityError("holder_split_check: integrand not integrable at 0");
        QuadratureSpec spec = quad_spec;
        if (profile.support_lo() == 0.0 && w < 0.0) spec.singular_origin = true;
        auto f = [&](double r) {
            const double g = profile.value(r);
            if (g == 0.0) return 0.0;
            const double base = std::abs(g) * std::pow(r, w / power);
            const double out = std::pow(base, power);
            if (std::isfinite(out)) return out;
            return std::exp(power * (std::log(std::abs(g)) + (w / power) * std::log(r)));
        };
        if (profile.support_lo() > 0.0) {
            auto sub = [&](double t) {
                const double r = std::exp(t);
                return f(r) * r;
            };
            QuadratureSpec seg = spec;
            seg.singular_origin = false;
            return integrate(sub, std::log(profile.support_lo()),
                             std::log(profile.support_hi()), seg);
        }
        return integrate(f, profile.support_lo(), profile.support_hi(), spec);
    };

    const double omega = unit_sphere_area(n);
    const double I_p = omega * weighted(p, b * p).value;
    const double I_2 = omega * weighted(2.0, 2.0 * (a + 1.0)).value;
    const double I_star = omega * weighted(two_star, two_star * a).value;

    HolderReport rep;
    rep.p = p;
    rep.b = b;
    rep.theta = theta;
    rep.lhs = I_p;
    rep.rhs = std::pow(I_2, 1.0 - theta) * std::pow(I_star, theta);
    rep.ratio = rep.lhs / rep.rhs;
    return rep;
}

YoungReport young_pointwise_check(double p, std::span<const std::vector<double>> vs,
                                  std::span<const std::vector<double>> ws,
                                  std::span<const double> lambdas) {
    if (!(p > 1.0)) throw DomainError("young_pointwise_check: p must satisfy p > 1");
    if (vs.size() != ws.size()) throw DomainError("young_pointwise_check: mismatched pair count");
    const double q = p / (p - 1.0);
    YoungReport rep;
    rep.min_slack = std::numeric_limits<double>::infinity();
    rep.max_slack = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& V = vs[i];
        const auto& W = ws[i];
        if (V.size() != W.size())
            throw DomainError("young_pointwise_check: mismatched vector dimensions");
        double dot = 0.0, nv = 0.0, nw = 0.0;
        for (std::size_t k = 0; k < V.size(); ++k) {
            dot += V[k] * W[k];
            nv += V[k] * V[k];
            nw += W[k] * W[k];
        }
        nv = std::sqrt(nv);
        nw = std::sqrt(nw);
        for (double lam : lambdas) {
            if (!(lam > 0.0)) throw DomainError("young_pointwise_check: lambda must be positive");
            const double bound =
                std::pow(lam, -p) * std::pow(nv, p) / p + std::pow(lam, q) * std::pow(nw, q) / q;
            const double slack = bound - dot;
            rep.min_slack = std::min(rep.min_slack, slack);
            rep.max_slack = std::max(rep.max_slack, slack);
            if (slack < -1e-12 * std::max(1.0, std::abs(bound))) ++rep.violations;
            ++rep.checks;
        }
    }
    if (rep.checks == 0) {
        rep.min_slack = 0.0;
        rep.max_slack = 0.0;
    }
    return rep;
}

YoungReport young_pointwise_check_random(double p, int pairs, int dim,
                                         std::span<const double> lambdas, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<double>> vs(pairs), ws(pairs);
    for (int i = 0; i < pairs; ++i) {
        vs[i].resize(dim);
        ws[i].resize(dim);
        for (int k = 0; k < dim; ++k) vs[i][k] = normal(rng);
        for (int k = 0; k < dim; ++k) ws[i][k] = normal(rng);
    }
    YoungReport rep = young_pointwise_check(p, vs, ws, lambdas);
    rep.seed = seed;
    return rep;
}

}  // namespace sharpineq
