#include "sharpineq/core.hpp"

#include <cmath>

namespace sharpineq {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::HardySubcritical: return "hardy";
        case Variant::HardySupercritical: return "hardy-super";
        case Variant::Hardy1D: return "hardy1d";
        case Variant::CknEdgeBequalsAplus1: return "ckn-plus1";
        case Variant::CknEdgeBequalsA: return "ckn-equal";
        case Variant::CknInterpolated: return "ckn";
        case Variant::Rellich: return "rellich";
    }
    return "?";
}

std::optional<Variant> variant_from_name(const std::string& name) {
    if (name == "hardy" || name == "hardy-sub") return Variant::HardySubcritical;
    if (name == "hardy-super" || name == "hardy-supercritical") return Variant::HardySupercritical;
    if (name == "hardy1d" || name == "hardy-1d") return Variant::Hardy1D;
    if (name == "ckn-plus1" || name == "ckn-edge-plus1") return Variant::CknEdgeBequalsAplus1;
    if (name == "ckn-equal" || name == "ckn-edge-equal") return Variant::CknEdgeBequalsA;
    if (name == "ckn" || name == "ckn-interp") return Variant::CknInterpolated;
    if (name == "rellich") return Variant::Rellich;
    return std::nullopt;
}

double InequalityCase::a() const {
    if (!has_weights_) throw DomainError("case has no weight exponent a (not a CKN variant)");
    return a_;
}

double InequalityCase::b() const {
    if (!has_weights_) throw DomainError("case has no weight exponent b (not a CKN variant)");
    return b_;
}

double InequalityCase::theta() const {
    if (!has_theta_) throw DomainError("case has no interpolation parameter theta");
    return theta_;
}

bool InequalityCase::is_hardy() const {
    return variant_ == Variant::HardySubcritical || variant_ == Variant::HardySupercritical ||
           variant_ == Variant::Hardy1D;
}

bool InequalityCase::is_ckn() const {
    return variant_ == Variant::CknEdgeBequalsAplus1 || variant_ == Variant::CknEdgeBequalsA ||
           variant_ == Variant::CknInterpolated;
}

double theta_from_b(int n, double a, double b) {
    require(n >= 3, "n must satisfy n >= 3");
    require_finite(a, "a");
    require_finite(b, "b");
    const double slack = 1e-12 * std::max(1.0, std::abs(a));
    require(b >= a - slack && b <= a + 1.0 + slack, "b must satisfy a <= b <= a+1");
    const double d = a + 1.0 - b;  // in [0, 1]
    double theta = d * (n - 2.0) / (n - 2.0 * d);
    if (theta < 0.0) theta = 0.0;
    if (theta > 1.0) theta = 1.0;
    return theta;
}

double b_from_theta(int n, double a, double theta) {
    require(n >= 3, "n must satisfy n >= 3");
    require_finite(a, "a");
    require(theta >= 0.0 && theta <= 1.0, "theta must satisfy 0 <= theta <= 1");
    return a + 1.0 - n * theta / (n - 2.0 + 2.0 * theta);
}

InequalityCase make_case(Variant variant, const CaseParams& prm) {
    InequalityCase c;
    c.variant_ = variant;
    if (prm.p) require_finite(*prm.p, "p");
    if (prm.a) require_finite(*prm.a, "a");
    if (prm.b) require_finite(*prm.b, "b");
    if (prm.theta) require_finite(*prm.theta, "theta");

    auto reject_weights = [&] {
        require(!prm.a && !prm.b && !prm.theta,
                "a, b, theta apply only to CKN variants");
    };

    switch (variant) {
        case Variant::HardySubcritical: {
            reject_weights();
            require(prm.p.has_value(), "p is required");
            require(prm.n >= 2, "n must satisfy n > p > 1");
            require(*prm.p > 1.0 && *prm.p < prm.n, "p must satisfy 1 < p < n");
            c.n_ = prm.n;
            c.p_ = *prm.p;
            break;
        }
        case Variant::HardySupercritical: {
            reject_weights();
            require(prm.p.has_value(), "p is required");
            require(prm.n >= 2, "n must satisfy n > 1");
            require(*prm.p > prm.n, "p must satisfy p > n");
            c.n_ = prm.n;
            c.p_ = *prm.p;
            break;
        }
        case Variant::Hardy1D: {
            reject_weights();
            require(prm.p.has_value(), "p is required");
            require(prm.n == 0 || prm.n == 1, "the one-dimensional case fixes n = 1");
            require(*prm.p > 1.0, "p must satisfy p > 1");
            c.n_ = 1;
            c.p_ = *prm.p;
            break;
        }
        case Variant::CknEdgeBequalsAplus1:
        case Variant::CknEdgeBequalsA:
        case Variant::CknInterpolated: {
            require(!prm.p.has_value(), "p is derived for CKN variants, do not supply it");
            require(prm.n >= 3, "n must satisfy n >= 3");
            require(prm.a.has_value(), "a is required");
            const double a = *prm.a;
            require(a < (prm.n - 2.0) / 2.0, "a must satisfy a < (n-2)/2");
            double b = 0.0;
            if (variant == Variant::CknEdgeBequalsAplus1) {
                b = a + 1.0;
                require(!prm.b || std::abs(*prm.b - b) <= 1e-12,
                        "this edge variant fixes b = a+1");
                require(!prm.theta, "theta applies only to the interpolated variant");
            } else if (variant == Variant::CknEdgeBequalsA) {
                b = a;
                require(!prm.b || std::abs(*prm.b - b) <= 1e-12,
                        "this edge variant fixes b = a");
                require(!prm.theta, "theta applies only to the interpolated variant");
            } else {
                require(prm.b.has_value() || prm.theta.has_value(),
                        "b (or theta) is required for the interpolated variant");
                if (prm.b) {
                    const double slack = 1e-12 * std::max(1.0, std::abs(a));
                    require(*prm.b >= a - slack && *prm.b <= a + 1.0 + slack,
                            "b must satisfy a <= b <= a+1");
                    b = *prm.b;
                    if (prm.theta) {
                        require(std::abs(*prm.theta - theta_from_b(prm.n, a, b)) <= 1e-9,
                                "theta is inconsistent with b (they are linked by the "
                                "interpolation identity)");
                    }
                } else {
                    require(*prm.theta >= 0.0 && *prm.theta <= 1.0,
                            "theta must satisfy 0 <= theta <= 1");
                    b = b_from_theta(prm.n, a, *prm.theta);
                }
            }
            c.n_ = prm.n;
            c.a_ = a;
            c.b_ = b;
            c.has_weights_ = true;
            c.p_ = 2.0 * prm.n / (prm.n - 2.0 + 2.0 * (b - a));
            if (variant == Variant::CknInterpolated) {
                c.theta_ = theta_from_b(prm.n, a, b);
                c.has_theta_ = true;
            }
            break;
        }
        case Variant::Rellich: {
            reject_weights();
            require(!prm.p || *prm.p == 2.0, "the Rellich case fixes p = 2");
            require(prm.n > 4, "n must satisfy n > 4");
            c.n_ = prm.n;
            c.p_ = 2.0;
            break;
        }
    }
    return c;
}

InequalityCase hardy_case(int n, double p) {
    CaseParams prm;
    prm.n = n;
    prm.p = p;
    return make_case(Variant::HardySubcritical, prm);
}

InequalityCase hardy_supercritical_case(int n, double p) {
    CaseParams prm;
    prm.n = n;
    prm.p = p;
    return make_case(Variant::HardySupercritical, prm);
}

InequalityCase hardy_1d_case(double p) {
    CaseParams prm;
    prm.p = p;
    return make_case(Variant::Hardy1D, prm);
}

InequalityCase ckn_plus1_case(int n, double a) {
    CaseParams prm;
    prm.n = n;
    prm.a = a;
    return make_case(Variant::CknEdgeBequalsAplus1, prm);
}

InequalityCase ckn_equal_case(int n, double a) {
    CaseParams prm;
    prm.n = n;
    prm.a = a;
    return make_case(Variant::CknEdgeBequalsA, prm);
}

InequalityCase ckn_case(int n, double a, double b) {
    CaseParams prm;
    prm.n = n;
    prm.a = a;
    prm.b = b;
    return make_case(Variant::CknInterpolated, prm);
}

InequalityCase rellich_case(int n) {
    CaseParams prm;
    prm.n = n;
    return make_case(Variant::Rellich, prm);
}

InterpolationExponents interpolation_exponents(const InequalityCase& c) {
    if (c.variant() != Variant::CknInterpolated)
        throw DomainError("interpolation exponents are defined for the interpolated CKN case only");
    const double theta = c.theta();
    const double n = c.n();
    InterpolationExponents e;
    e.theta = theta;
    e.alpha = 2.0 * n * theta / ((n - 2.0) * c.p());
    e.beta = 2.0 * (1.0 - theta) / c.p();
    return e;
}

}  // namespace sharpineq
