#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sharpineq/constants.hpp"
#include "sharpineq/core.hpp"
#include "sharpineq/quadrature.hpp"
#include "sharpineq/radial.hpp"

namespace sharpineq {

struct QuadDiagnostics {
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    int lhs_panels = 0;
    int rhs_panels = 0;
};

// Monte Carlo crosscheck of the raw radial integrals on both sides.
struct McCrosscheck {
    double lhs_estimate = 0.0, lhs_std_error = 0.0;
    double rhs_estimate = 0.0, rhs_std_error = 0.0;
    double lhs_reference = 0.0, rhs_reference = 0.0;  // quadrature values
    bool lhs_within_3se = false, rhs_within_3se = false;
};

struct VerificationReport {
    InequalityCase inequality_case;
    std::string profile;
    double lhs = 0.0;
    double rhs = 0.0;
    SharpConstant constant;
    double ratio = 0.0;   // lhs / (constant * rhs), in (0, 1] for a correct run
    double margin = 0.0;  // 1 - ratio
    QuadDiagnostics quadrature;
    std::optional<McCrosscheck> mc;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;  // excluded from serialized reports (see cli)
    bool ratio_exceeds_one = false;  // hard failure diagnostic
};

VerificationReport verify_case(const InequalityCase& c, const RadialProfile& profile,
                               const QuadratureSpec& quad_spec,
                               const std::optional<McSpec>& mc_spec = {});

// One sweep entry: either a near-extremal (eps, r_in, r_out) triple or a
// mollifier radius R.
struct ScheduleEntry {
    ProfileFamily family = ProfileFamily::NearExtremal;
    double eps = 0.0, r_in = 0.0, r_out = 0.0;
    double R = 0.0;
    double param() const { return family == ProfileFamily::Mollifier ? R : eps; }
};

struct SweepEntryResult {
    ScheduleEntry entry;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0, margin = 0.0;
};

struct SweepSeries {
    InequalityCase inequality_case;
    std::vector<SweepEntryResult> entries;
    std::vector<double> ratios;
    double sup_ratio = 0.0;
};

// The calibrated near-extremal ladder for the case: eps decreasing, windows
// widening (capped so every profile evaluation stays in double range). Along
// it the ratios increase toward the sharp constant.
std::vector<ScheduleEntry> canonical_schedule(const InequalityCase& c);

SweepSeries sweep(const InequalityCase& c, std::span<const ScheduleEntry> schedule,
                  const QuadratureSpec& quad_spec);

struct HolderReport {
    double lhs = 0.0;          // int |u|^p / |x|^{bp}
    double rhs = 0.0;          // product of the two Hölder factors
    double ratio = 0.0;
    double p = 0.0, b = 0.0, theta = 0.0;
};

// Numerically verifies the Hölder interpolation split behind the
// interpolated CKN case, for theta in (0,1).
HolderReport holder_split_check(int n, double a, double theta, const RadialProfile& profile,
                                const QuadratureSpec& quad_spec);

struct YoungReport {
    double min_slack = 0.0;
    double max_slack = 0.0;
    long violations = 0;  // slack below -1e-12 * scale
    long checks = 0;
    std::uint64_t seed = 0;
};

// Pointwise generalized Young inequality on supplied vector pairs.
YoungReport young_pointwise_check(double p, std::span<const std::vector<double>> vs,
                                  std::span<const std::vector<double>> ws,
                                  std::span<const double> lambdas);

// Convenience: seeded random pairs in the given dimension.
YoungReport young_pointwise_check_random(double p, int pairs, int dim,
                                         std::span<const double> lambdas, std::uint64_t seed);

}  // namespace sharpineq
