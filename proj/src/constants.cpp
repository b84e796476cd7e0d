#include "sharpineq/constants.hpp"

#include <cmath>

namespace sharpineq {

namespace {

// Lanczos g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_series(double z) {
    double x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + i);
    return x;
}

}  // namespace

double gamma_fn(double s) {
    if (!(s > 0.0)) throw DomainError("gamma: s must satisfy s > 0");
    if (s < 0.5) {
        // reflection; keeps the series argument in its accurate range
        return M_PI / (std::sin(M_PI * s) * gamma_fn(1.0 - s));
    }
    const double z = s - 1.0;
    const double t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_series(z);
}

double log_gamma_fn(double s) {
    if (!(s > 0.0)) throw DomainError("gamma: s must satisfy s > 0");
    if (s < 0.5) {
        return std::log(M_PI / std::sin(M_PI * s)) - log_gamma_fn(1.0 - s);
    }
    const double z = s - 1.0;
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_series(z));
}

double unit_sphere_area(int n) {
    if (n < 1) throw DomainError("unit_sphere_area: n must satisfy n >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n);
}

double sobolev_sharp_constant(int n, double p) {
    if (n < 2) throw DomainError("K(n,p): n must satisfy n >= 2");
    if (!(p >= 1.0)) throw DomainError("K(n,p): p must satisfy p >= 1");
    if (!(p < n)) throw DomainError("K(n,p): p must satisfy p < n");
    const double nn = n;
    const double front = 1.0 / (std::pow(2.0, 1.0 / nn) * std::sqrt(M_PI) * nn);
    // ((p-1)/(n-p))^{1-1/p}, taken as written; p = 1 gives exponent 0, value 1
    const double f1 = std::pow((p - 1.0) / (nn - p), 1.0 - 1.0 / p);
    if (p == 1.0) {
        // (p/(p-1))^{1/n} / Gamma(n(1-1/p))^{1/n} -> n^{1/n} as p -> 1+
        return front * f1 *
               std::exp((std::log(nn) + log_gamma_fn(nn / 2.0)) / nn);
    }
    const double f2 = std::pow(p / (p - 1.0), 1.0 / nn);
    const double lg = log_gamma_fn(nn / 2.0) + log_gamma_fn(nn) -
                      log_gamma_fn(nn / p) - log_gamma_fn(nn * (1.0 - 1.0 / p));
    return front * f1 * f2 * std::exp(lg / nn);
}

SharpConstant hardy_sharp_constant(const InequalityCase& c) {
    const double p = c.p();
    const double n = c.n();
    switch (c.variant()) {
        case Variant::HardySubcritical:
            return {std::pow(p / (n - p), p), c, "hardy subcritical (p/(n-p))^p"};
        case Variant::HardySupercritical:
            return {std::pow(p / (p - n), p), c, "hardy supercritical (p/(p-n))^p"};
        case Variant::Hardy1D:
            return {std::pow(p / (p - 1.0), p), c, "hardy one-dimensional (p/(p-1))^p"};
        default:
            throw DomainError("hardy_sharp_constant expects a Hardy variant");
    }
}

SharpConstant ckn_edge_plus1_constant(int n, double a) {
    InequalityCase c = ckn_plus1_case(n, a);  // validates n >= 3, a < (n-2)/2
    // 4/(n-2-2a)^2, evaluated so that a = 0 reproduces the Hardy p = 2
    // constant bit for bit
    const double d = n - 2.0 - 2.0 * a;
    return {std::pow(2.0 / d, 2.0), c, "ckn edge b=a+1, 4/(n-2-2a)^2"};
}

SharpConstant ckn_edge_equal_constant(int n, double a) {
    InequalityCase c = ckn_equal_case(n, a);
    // The Sobolev application inside the proof runs at p = 2; the printed
    // constants square K.
    const double K = sobolev_sharp_constant(n, 2.0);
    const double d = n - 2.0 - 2.0 * a;
    const double ratio = (a >= 0.0) ? (n - 2.0) / d : (n - 2.0 - 4.0 * a) / d;
    const char* branch = (a > 0.0)   ? "ckn edge b=a, K(n,2)^2 ((n-2)/(n-2-2a))^2"
                         : (a < 0.0) ? "ckn edge b=a, K(n,2)^2 ((n-2-4a)/(n-2-2a))^2"
                                     : "ckn edge b=a, K(n,2)^2 (both branches)";
    return {K * K * ratio * ratio, c, branch};
}

SharpConstant ckn_interpolated_constant(const InequalityCase& c) {
    if (c.variant() != Variant::CknInterpolated)
        throw DomainError("ckn_interpolated_constant expects the interpolated CKN case");
    const InterpolationExponents e = interpolation_exponents(c);
    const double c_equal = ckn_edge_equal_constant(c.n(), c.a()).value;
    const double c_plus1 = ckn_edge_plus1_constant(c.n(), c.a()).value;
    const double value = std::pow(c_equal, e.alpha) * std::pow(c_plus1, e.beta);
    return {value, c, "ckn interpolated C_{a+-}^alpha C_{a+1}^beta"};
}

SharpConstant rellich_sharp_constant(int n) {
    InequalityCase c = rellich_case(n);  // validates n > 4
    const double d = n * (n - 4.0);
    return {16.0 / (d * d), c, "rellich (4/(n(n-4)))^2"};
}

SharpConstant sharp_constant(const InequalityCase& c) {
    switch (c.variant()) {
        case Variant::HardySubcritical:
        case Variant::HardySupercritical:
        case Variant::Hardy1D:
            return hardy_sharp_constant(c);
        case Variant::CknEdgeBequalsAplus1:
            return ckn_edge_plus1_constant(c.n(), c.a());
        case Variant::CknEdgeBequalsA:
            return ckn_edge_equal_constant(c.n(), c.a());
        case Variant::CknInterpolated:
            return ckn_interpolated_constant(c);
        case Variant::Rellich:
            return rellich_sharp_constant(c.n());
    }
    throw DomainError("unknown variant");
}

}  // namespace sharpineq
