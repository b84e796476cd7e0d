#pragma once

#include <string>
#include <vector>

#include "sharpineq/core.hpp"
#include "sharpineq/quadrature.hpp"

namespace sharpineq {

enum class ProfileFamily { Mollifier, NearExtremal };

// Compactly supported radial test function with closed-form g, g', g''.
//
//   Mollifier:    g(r) = exp(-1/(1-(r/R)^2)) on [0, R), 0 outside.
//   NearExtremal: g(r) = phi(r) r^{-gamma+eps}, phi a C^2 quintic-smoothstep
//                 cutoff equal to 1 on [r_in, r_out], 0 outside
//                 [r_in/2, 2 r_out]. As eps -> 0 with the window widening the
//                 Rayleigh ratio approaches the sharp constant.
class RadialProfile {
public:
    static RadialProfile mollifier(double R);
    static RadialProfile near_extremal(double gamma, double eps, double r_in, double r_out);
    // gamma derived from the case's extremal decay rate
    static RadialProfile near_extremal_for(const InequalityCase& c, double eps, double r_in,
                                           double r_out);

    // multiplies g (and derivatives) by c; used by homogeneity checks
    RadialProfile scaled(double c) const;
    // replaces g(r) by g(r/t); used by dilation checks
    RadialProfile dilated(double t) const;

    struct Eval {
        double g, dg, d2g;
    };
    Eval eval(double r) const;
    double value(double r) const;
    double deriv1(double r) const;
    double deriv2(double r) const;

    double support_lo() const;
    double support_hi() const;
    // interior points where the piecewise definition changes
    std::vector<double> breakpoints() const;

    ProfileFamily family() const { return family_; }
    double radius() const { return R_; }
    double gamma() const { return gamma_; }
    double eps() const { return eps_; }
    double r_in() const { return r_in_; }
    double r_out() const { return r_out_; }
    double amplitude() const { return amplitude_; }
    std::string descriptor() const;

private:
    RadialProfile() = default;
    ProfileFamily family_ = ProfileFamily::Mollifier;
    double R_ = 1.0;
    double gamma_ = 0.0, eps_ = 0.0, r_in_ = 0.0, r_out_ = 0.0;
    double amplitude_ = 1.0;
    double dilation_ = 1.0;
};

// Extremal decay rate gamma targeted by the near-extremal family:
// (n-p)/p for the n-dimensional Hardy cases, 1/p in one dimension,
// (n - b p)/p for CKN, (n-4)/2 for Rellich.
double case_gamma(const InequalityCase& c);

// (g'' + (n-1) g'/r); the r = 0 limit is n g''(0).
double radial_laplacian(const RadialProfile& profile, double r, int n);
double laplacian_from_derivatives(double dg, double d2g, double r, int n);

struct FunctionalSides {
    double lhs = 0.0;  // left side of the inequality (outer power applied)
    double rhs = 0.0;
    double lhs_integral = 0.0;  // raw radial integrals, before outer powers
    double rhs_integral = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    int lhs_panels = 0;
    int rhs_panels = 0;
};

// Reduces both sides of the case's inequality to one-dimensional weighted
// integrals of the profile and evaluates them. Throws IntegrabilityError when
// the weight exponent makes an integrand non-integrable at the origin for the
// given profile family.
FunctionalSides functional_sides(const InequalityCase& c, const RadialProfile& profile,
                                 const QuadratureSpec& spec);

// Full n-dimensional integrand value at radius r for one side of the case;
// feeds the Monte Carlo oracle. side 0 = left, 1 = right.
double pointwise_integrand(const InequalityCase& c, const RadialProfile& profile, int side,
                           double r);

}  // namespace sharpineq
