#include "sharpineq/radial.hpp"

#include <cmath>

#include "sharpineq/constants.hpp"

namespace sharpineq {

namespace {

// quintic smoothstep: C^2 across both band edges
double smoothstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep_d1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
double smoothstep_d2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

// |v|^power * r^weight evaluated as (|v| r^{weight/power})^power so that the
// intermediate stays representable for the extreme near-extremal windows,
// with a log-space fallback for the rare out-of-range base.
double weighted_power(double v, double r, double weight, double power) {
    if (v == 0.0) return 0.0;
    const double base = std::abs(v) * std::pow(r, weight / power);
    const double out = std::pow(base, power);
    if (std::isfinite(out)) return out;
    return std::exp(power * (std::log(std::abs(v)) + (weight / power) * std::log(r)));
}

}  // namespace

RadialProfile RadialProfile::mollifier(double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("mollifier: R must satisfy R > 0");
    RadialProfile p;
    p.family_ = ProfileFamily::Mollifier;
    p.R_ = R;
    return p;
}

RadialProfile RadialProfile::near_extremal(double gamma, double eps, double r_in, double r_out) {
    if (!std::isfinite(gamma)) throw DomainError("near_extremal: gamma must be finite");
    if (!(eps > 0.0)) throw DomainError("near_extremal: eps must satisfy eps > 0");
    if (!(r_in > 0.0) || !(r_out > r_in))
        throw DomainError("near_extremal: radii must satisfy 0 < r_in < r_out");
    RadialProfile p;
    p.family_ = ProfileFamily::NearExtremal;
    p.gamma_ = gamma;
    p.eps_ = eps;
    p.r_in_ = r_in;
    p.r_out_ = r_out;
    return p;
}

RadialProfile RadialProfile::near_extremal_for(const InequalityCase& c, double eps, double r_in,
                                               double r_out) {
    return near_extremal(case_gamma(c), eps, r_in, r_out);
}

RadialProfile RadialProfile::scaled(double c) const {
    if (!std::isfinite(c)) throw DomainError("scaled: factor must be finite");
    RadialProfile p = *this;
    p.amplitude_ *= c;
    return p;
}

RadialProfile RadialProfile::dilated(double t) const {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("dilated: factor must satisfy t > 0");
    RadialProfile p = *this;
    p.dilation_ *= t;
    return p;
}

RadialProfile::Eval RadialProfile::eval(double r) const {
    Eval out{0.0, 0.0, 0.0};
    if (!(r >= 0.0)) return out;
    const double s = r / dilation_;
    double g = 0.0, dg = 0.0, d2g = 0.0;
    if (family_ == ProfileFamily::Mollifier) {
        if (s < R_) {
            const double w = 1.0 - (s / R_) * (s / R_);
            const double ew = std::exp(-1.0 / w);
            if (ew != 0.0) {
                const double R2 = R_ * R_;
                const double u1 = -2.0 * s / (R2 * w * w);
                const double u2 = -2.0 / (R2 * w * w) - 8.0 * s * s / (R2 * R2 * w * w * w);
                g = ew;
                dg = ew * u1;
                d2g = ew * (u1 * u1 + u2);
            }
        }
    } else {
        if (s > 0.5 * r_in_ && s < 2.0 * r_out_) {
            double phi = 1.0, dphi = 0.0, d2phi = 0.0;
            if (s < r_in_) {
                const double d = 2.0 / r_in_;
                const double t = (s - 0.5 * r_in_) * d;
                phi = smoothstep(t);
                dphi = smoothstep_d1(t) * d;
                d2phi = smoothstep_d2(t) * d * d;
            } else if (s > r_out_) {
                const double d = 1.0 / r_out_;
                const double t = (s - r_out_) * d;
                phi = 1.0 - smoothstep(t);
                dphi = -smoothstep_d1(t) * d;
                d2phi = -smoothstep_d2(t) * d * d;
            }
            const double e = -gamma_ + eps_;
            const double v = std::pow(s, e);
            const double v1 = (e == 0.0) ? 0.0 : e * v / s;
            const double c2 = e * (e - 1.0);
            const double v2 = (c2 == 0.0) ? 0.0 : c2 * v / (s * s);
            g = phi * v;
            dg = dphi * v + phi * v1;
            d2g = d2phi * v + 2.0 * dphi * v1 + phi * v2;
        }
    }
    out.g = amplitude_ * g;
    out.dg = amplitude_ * dg / dilation_;
    out.d2g = amplitude_ * d2g / (dilation_ * dilation_);
    return out;
}

double RadialProfile::value(double r) const { return eval(r).g; }
double RadialProfile::deriv1(double r) const { return eval(r).dg; }
double RadialProfile::deriv2(double r) const { return eval(r).d2g; }

double RadialProfile::support_lo() const {
    return family_ == ProfileFamily::Mollifier ? 0.0 : 0.5 * r_in_ * dilation_;
}

double RadialProfile::support_hi() const {
    return family_ == ProfileFamily::Mollifier ? R_ * dilation_ : 2.0 * r_out_ * dilation_;
}

std::vector<double> RadialProfile::breakpoints() const {
    if (family_ == ProfileFamily::Mollifier) return {};
    return {r_in_ * dilation_, r_out_ * dilation_};
}

std::string RadialProfile::descriptor() const {
    char buf[160];
    if (family_ == ProfileFamily::Mollifier) {
        std::snprintf(buf, sizeof buf, "mollifier R=%g", R_ * dilation_);
    } else {
        std::snprintf(buf, sizeof buf, "near-extremal gamma=%g eps=%g window=[%g,%g]", gamma_,
                      eps_, r_in_ * dilation_, r_out_ * dilation_);
    }
    std::string s = buf;
    if (amplitude_ != 1.0) {
        std::snprintf(buf, sizeof buf, " amplitude=%g", amplitude_);
        s += buf;
    }
    return s;
}

double case_gamma(const InequalityCase& c) {
    switch (c.variant()) {
        case Variant::HardySubcritical:
        case Variant::HardySupercritical:
            return (c.n() - c.p()) / c.p();
        case Variant::Hardy1D:
            return 1.0 / c.p();
        case Variant::CknEdgeBequalsAplus1:
        case Variant::CknEdgeBequalsA:
        case Variant::CknInterpolated:
            return (c.n() - c.b() * c.p()) / c.p();
        case Variant::Rellich:
            return 0.5 * (c.n() - 4.0);
    }
    throw DomainError("unknown variant");
}

double laplacian_from_derivatives(double dg, double d2g, double r, int n) {
    return d2g + (n - 1) * dg / r;
}

double radial_laplacian(const RadialProfile& profile, double r, int n) {
    if (r == 0.0) return n * profile.deriv2(0.0);
    const RadialProfile::Eval e = profile.eval(r);
    if (e.g == 0.0 && e.dg == 0.0 && e.d2g == 0.0) return 0.0;
    return laplacian_from_derivatives(e.dg, e.d2g, r, n);
}

namespace {

struct SideDef {
    int deriv;      // 0 = g, 1 = g', 2 = radial laplacian
    double power;   // exponent applied to the profile factor
    double weight;  // exponent on r, includes the r^{n-1} surface factor
};

IntegralEstimate integrate_side(const RadialProfile& prof, const SideDef& sd, int n,
                                const QuadratureSpec& spec) {
    const double lo = prof.support_lo();
    const double hi = prof.support_hi();
    auto f = [&](double r) {
        double v;
        switch (sd.deriv) {
            case 0: v = prof.value(r); break;
            case 1: v = prof.deriv1(r); break;
            default: v = radial_laplacian(prof, r, n); break;
        }
        return weighted_power(v, r, sd.weight, sd.power);
    };
    if (lo > 0.0) {
        // support away from the origin: integrate in t = log r, split at the
        // cutoff band edges
        std::vector<double> ts;
        ts.push_back(std::log(lo));
        for (double b : prof.breakpoints())
            if (b > lo && b < hi) ts.push_back(std::log(b));
        ts.push_back(std::log(hi));
        QuadratureSpec seg = spec;
        seg.singular_origin = false;
        IntegralEstimate total;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            auto sub = [&](double t) {
                const double r = std::exp(t);
                return f(r) * r;
            };
            IntegralEstimate e = integrate(sub, ts[i], ts[i + 1], seg);
            total.value += e.value;
            total.error += e.error;
            total.panels += e.panels;
        }
        return total;
    }
    QuadratureSpec s2 = spec;
    if (sd.weight < 0.0) s2.singular_origin = true;
    return integrate(f, lo, hi, s2);
}

void check_integrable(const RadialProfile& prof, double weight, const char* side) {
    if (prof.support_lo() > 0.0) return;
    if (weight <= -1.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%s integrand r^{%g} is not integrable at 0 for a profile supported at the "
                      "origin",
                      side, weight);
        throw IntegrabilityError(buf);
    }
}

// Cumulative-Simpson evaluation of the one-dimensional left side
// int (eta(x)/x)^p dx with eta(x) = int_0^x g; refined until stable.
struct Hardy1dLhs {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

Hardy1dLhs hardy1d_lhs(const RadialProfile& prof, double p, const QuadratureSpec& spec) {
    const double lo = prof.support_lo();
    const double hi = prof.support_hi();
    auto g = [&](double x) { return prof.value(x); };

    auto compute = [&](int K) {
        // mesh: geometric when the support stays away from 0, uniform otherwise
        std::vector<double> x(K + 1);
        if (lo > 0.0) {
            const double ratio = std::log(hi / lo);
            for (int j = 0; j <= K; ++j) x[j] = lo * std::exp(ratio * j / K);
        } else {
            for (int j = 0; j <= K; ++j) x[j] = hi * static_cast<double>(j) / K;
        }
        auto integrand = [&](double xx, double eta) {
            if (eta == 0.0) return 0.0;
            if (xx == 0.0) return std::pow(g(0.0), p);
            return std::pow(eta / xx, p);
        };
        double eta = 0.0;
        double acc = 0.0;
        double F_left = (x[0] == 0.0) ? std::pow(g(0.0), p) : 0.0;
        for (int j = 0; j < K; ++j) {
            const double a = x[j], b = x[j + 1];
            const double m = 0.5 * (a + b);
            const double q1 = 0.5 * (a + m), q3 = 0.5 * (m + b);
            const double eta_m = eta + (m - a) / 6.0 * (g(a) + 4.0 * g(q1) + g(m));
            const double eta_b = eta_m + (b - m) / 6.0 * (g(m) + 4.0 * g(q3) + g(b));
            const double F_m = integrand(m, eta_m);
            const double F_b = integrand(b, eta_b);
            acc += (b - a) / 6.0 * (F_left + 4.0 * F_m + F_b);
            eta = eta_b;
            F_left = F_b;
        }
        // analytic tail: eta is constant past the support, integrand decays x^{-p}
        acc += std::pow(eta, p) * std::pow(hi, 1.0 - p) / (p - 1.0);
        return acc;
    };

    Hardy1dLhs out;
    int K = 256;
    double prev = compute(K);
    while (true) {
        K *= 2;
        const double cur = compute(K);
        const double diff = std::abs(cur - prev);
        if (diff <= std::max(spec.rel_tol * std::abs(cur), spec.abs_tol)) {
            out.value = cur;
            out.error = diff;
            out.panels = K;
            return out;
        }
        if (K >= spec.max_subdivisions)
            throw ToleranceNotMet("hardy1d eta accumulation did not stabilize");
        prev = cur;
    }
}

}  // namespace

FunctionalSides functional_sides(const InequalityCase& c, const RadialProfile& profile,
                                 const QuadratureSpec& spec) {
    FunctionalSides out;
    const int n = c.n();
    const double p = c.p();

    if (c.variant() == Variant::Hardy1D) {
        if (profile.amplitude() < 0.0)
            throw DomainError("the one-dimensional case requires a nonnegative profile");
        Hardy1dLhs lhs = hardy1d_lhs(profile, p, spec);
        SideDef rhs_def{0, p, 0.0};
        IntegralEstimate rhs = integrate_side(profile, rhs_def, 1, spec);
        out.lhs = out.lhs_integral = lhs.value;
        out.rhs = out.rhs_integral = rhs.value;
        out.lhs_error = lhs.error;
        out.rhs_error = rhs.error;
        out.lhs_panels = lhs.panels;
        out.rhs_panels = rhs.panels;
        return out;
    }

    SideDef lhs_def{}, rhs_def{};
    bool lhs_outer_power = false;
    switch (c.variant()) {
        case Variant::HardySubcritical:
        case Variant::HardySupercritical:
            lhs_def = {0, p, n - 1.0 - p};
            rhs_def = {1, p, n - 1.0};
            break;
        case Variant::CknEdgeBequalsAplus1:
        case Variant::CknEdgeBequalsA:
        case Variant::CknInterpolated:
            lhs_def = {0, p, n - 1.0 - c.b() * p};
            rhs_def = {1, 2.0, n - 1.0 - 2.0 * c.a()};
            lhs_outer_power = true;
            break;
        case Variant::Rellich:
            lhs_def = {0, 2.0, n - 5.0};
            rhs_def = {2, 2.0, n - 1.0};
            break;
        default:
            throw DomainError("unsupported variant");
    }
    check_integrable(profile, lhs_def.weight, "left-side");
    check_integrable(profile, rhs_def.weight, "right-side");

    const double omega = unit_sphere_area(n);
    IntegralEstimate li = integrate_side(profile, lhs_def, n, spec);
    IntegralEstimate ri = integrate_side(profile, rhs_def, n, spec);
    out.lhs_integral = omega * li.value;
    out.rhs_integral = omega * ri.value;
    out.lhs = lhs_outer_power ? std::pow(out.lhs_integral, 2.0 / p) : out.lhs_integral;
    out.rhs = out.rhs_integral;
    out.lhs_error = omega * li.error;
    out.rhs_error = omega * ri.error;
    out.lhs_panels = li.panels;
    out.rhs_panels = ri.panels;
    return out;
}

double pointwise_integrand(const InequalityCase& c, const RadialProfile& profile, int side,
                           double r) {
    if (c.variant() == Variant::Hardy1D)
        throw DomainError("the one-dimensional case has no n-dimensional integrand");
    if (side != 0 && side != 1) throw DomainError("side must be 0 (left) or 1 (right)");
    const double p = c.p();
    switch (c.variant()) {
        case Variant::HardySubcritical:
        case Variant::HardySupercritical:
            return side == 0 ? weighted_power(profile.value(r), r, -p, p)
                             : weighted_power(profile.deriv1(r), r, 0.0, p);
        case Variant::CknEdgeBequalsAplus1:
        case Variant::CknEdgeBequalsA:
        case Variant::CknInterpolated:
            return side == 0 ? weighted_power(profile.value(r), r, -c.b() * p, p)
                             : weighted_power(profile.deriv1(r), r, -2.0 * c.a(), 2.0);
        case Variant::Rellich:
            return side == 0 ? weighted_power(profile.value(r), r, -4.0, 2.0)
                             : weighted_power(radial_laplacian(profile, r, c.n()), r, 0.0, 2.0);
        default:
            throw DomainError("unsupported variant");
    }
}

}  // namespace sharpineq
