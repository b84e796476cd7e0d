#pragma once

#include <string>

#include "sharpineq/core.hpp"

namespace sharpineq {

// Gamma function for s > 0 (Lanczos approximation, relative error below
// 1e-13 on [0.5, 50]). DomainError for s <= 0.
double gamma_fn(double s);

// log Gamma for s > 0, same approximation in log form.
double log_gamma_fn(double s);

// Surface measure of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

// The sharp Sobolev embedding constant K(n,p), evaluated exactly as the
// closed formula prints it, for 1 <= p < n. The p = 1 endpoint is the
// continuous limit of the printed expression.
double sobolev_sharp_constant(int n, double p);

struct SharpConstant {
    double value;
    InequalityCase inequality_case;
    std::string provenance;
};

// (p/(n-p))^p, (p/(p-n))^p or (p/(p-1))^p depending on the Hardy variant.
SharpConstant hardy_sharp_constant(const InequalityCase& c);

// CKN edge b = a+1: 4/(n-2-2a)^2.
SharpConstant ckn_edge_plus1_constant(int n, double a);

// CKN edge b = a: K(n,2)^2 ((n-2)/(n-2-2a))^2 for a >= 0,
// K(n,2)^2 ((n-2-4a)/(n-2-2a))^2 for a <= 0; both coincide at a = 0.
SharpConstant ckn_edge_equal_constant(int n, double a);

// Interpolated CKN constant C_{a+-}^alpha * C_{a+1}^beta.
SharpConstant ckn_interpolated_constant(const InequalityCase& c);

// 16/(n^2 (n-4)^2) for n > 4.
SharpConstant rellich_sharp_constant(int n);

// Dispatch on the case variant.
SharpConstant sharp_constant(const InequalityCase& c);

}  // namespace sharpineq
