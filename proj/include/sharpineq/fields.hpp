#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sharpineq/core.hpp"

namespace sharpineq {

enum class FieldKind {
    HardyV,  // V(x) = x/((p-n) ||x||^p), div V = -||x||^{-p}
    CknW,    // W(x) = x/((2b-n) ||x||^{2b}), div W = -||x||^{-2b}
};

struct RadialVectorField {
    FieldKind kind;
    int n;
    double exponent;  // p for HardyV, b for CknW
};

// Validates the defining restrictions (p != n resp. 2b != n).
RadialVectorField make_field(FieldKind kind, int n, double exponent);

// The printed formula componentwise; DomainError at x = 0.
std::vector<double> field_eval(const RadialVectorField& field, std::span<const double> x);

// Central-difference divergence; h defaults to 1e-5 max(1, ||x||).
double divergence_fd(const RadialVectorField& field, std::span<const double> x,
                     std::optional<double> h = {});

// The closed-form divergence the field was built to have.
double divergence_exact(const RadialVectorField& field, std::span<const double> x);

}  // namespace sharpineq
