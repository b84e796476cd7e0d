#include "sharpineq/fields.hpp"

#include <cmath>

namespace sharpineq {

namespace {

double norm(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
}

double radial_coefficient(const RadialVectorField& f, double r) {
    if (f.kind == FieldKind::HardyV)
        return 1.0 / ((f.exponent - f.n) * std::pow(r, f.exponent));
    return 1.0 / ((2.0 * f.exponent - f.n) * std::pow(r, 2.0 * f.exponent));
}

}  // namespace

RadialVectorField make_field(FieldKind kind, int n, double exponent) {
    if (n < 1) throw DomainError("field: n must satisfy n >= 1");
    if (!std::isfinite(exponent)) throw DomainError("field: exponent must be finite");
    if (kind == FieldKind::HardyV && exponent == n)
        throw DomainError("HardyV requires p != n");
    if (kind == FieldKind::CknW && 2.0 * exponent == n)
        throw DomainError("CknW requires 2b != n");
    return {kind, n, exponent};
}

std::vector<double> field_eval(const RadialVectorField& field, std::span<const double> x) {
    if (static_cast<int>(x.size()) != field.n)
        throw DomainError("field_eval: x has the wrong dimension");
    const double r = norm(x);
    if (r == 0.0) throw DomainError("field_eval: the field is singular at x = 0");
    const double c = radial_coefficient(field, r);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i];
    return out;
}

double divergence_fd(const RadialVectorField& field, std::span<const double> x,
                     std::optional<double> h_opt) {
    if (static_cast<int>(x.size()) != field.n)
        throw DomainError("divergence_fd: x has the wrong dimension");
    const double r = norm(x);
    if (r == 0.0) throw DomainError("divergence_fd: the field is singular at x = 0");
    const double h = h_opt.value_or(1e-5 * std::max(1.0, r));
    std::vector<double> y(x.begin(), x.end());
    double div = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double xi = y[i];
        y[i] = xi + h;
        if (norm(y) == 0.0) throw DomainError("divergence_fd: stencil point hit the singularity");
        const double fp = radial_coefficient(field, norm(y)) * y[i];
        y[i] = xi - h;
        if (norm(y) == 0.0) throw DomainError("divergence_fd: stencil point hit the singularity");
        const double fm = radial_coefficient(field, norm(y)) * y[i];
        y[i] = xi;
        div += (fp - fm) / (2.0 * h);
    }
    return div;
}

double divergence_exact(const RadialVectorField& field, std::span<const double> x) {
    const double r = norm(x);
    if (r == 0.0) throw DomainError("divergence_exact: the field is singular at x = 0");
    const double e = field.kind == FieldKind::HardyV ? field.exponent : 2.0 * field.exponent;
    return -std::pow(r, -e);
}

}  // namespace sharpineq
