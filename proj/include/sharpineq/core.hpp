#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace sharpineq {

// Parameters violate a hypothesis, or an operation got the wrong variant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Weight exponent makes an integrand non-integrable for the given profile.
class IntegrabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ToleranceNotMet : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoFeasiblePoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variant {
    HardySubcritical,
    HardySupercritical,
    Hardy1D,
    CknEdgeBequalsAplus1,
    CknEdgeBequalsA,
    CknInterpolated,
    Rellich,
};

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

struct CaseParams {
    int n = 0;  // 0 = unspecified
    std::optional<double> p;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> theta;
};

// A validated inequality case. Construction goes through make_case, which
// rejects any parameter set outside the variant's hypotheses; instances are
// immutable afterwards and safe to share across threads.
class InequalityCase {
public:
    // empty placeholder; every parameterized case comes from make_case
    InequalityCase() = default;

    Variant variant() const { return variant_; }
    int n() const { return n_; }
    double p() const { return p_; }
    double q() const { return p_ / (p_ - 1.0); }  // Young conjugate of p

    bool has_weights() const { return has_weights_; }
    bool has_theta() const { return has_theta_; }
    double a() const;
    double b() const;
    double theta() const;

    bool is_hardy() const;
    bool is_ckn() const;

private:
    friend InequalityCase make_case(Variant, const CaseParams&);

    Variant variant_ = Variant::HardySubcritical;
    int n_ = 0;
    double p_ = 0.0;
    double a_ = 0.0;
    double b_ = 0.0;
    double theta_ = 0.0;
    bool has_weights_ = false;
    bool has_theta_ = false;
};

// Validates the raw parameters against the chosen variant's hypotheses.
// For CKN variants p is derived as p = 2n/(n-2+2(b-a)) and theta is stored
// explicitly so reports are reproducible. Throws DomainError naming the
// violated hypothesis.
InequalityCase make_case(Variant variant, const CaseParams& params);

// Convenience builders.
InequalityCase hardy_case(int n, double p);
InequalityCase hardy_supercritical_case(int n, double p);
InequalityCase hardy_1d_case(double p);
InequalityCase ckn_plus1_case(int n, double a);
InequalityCase ckn_equal_case(int n, double a);
InequalityCase ckn_case(int n, double a, double b);
InequalityCase rellich_case(int n);

// theta <-> b maps for the CKN interpolation, b = a+1 - n*theta/(n-2+2*theta).
// theta_from_b inverts that map; DomainError if b is outside [a, a+1].
double theta_from_b(int n, double a, double b);
double b_from_theta(int n, double a, double theta);

struct InterpolationExponents {
    double alpha;  // exponent on the b=a edge constant
    double beta;   // exponent on the b=a+1 edge constant
    double theta;
};

// alpha = 2n*theta/((n-2)p), beta = 2(1-theta)/p. CknInterpolated only.
InterpolationExponents interpolation_exponents(const InequalityCase& c);

}  // namespace sharpineq
