#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sharpineq/core.hpp"
#include "sharpineq/radial.hpp"
#include "sharpineq/verify.hpp"

namespace sharpineq::cli {

// Fully resolved run configuration: config-file values first, command-line
// flags override, and the result is echoed into every report.
struct RunConfig {
    std::string command;
    std::string case_name = "hardy";
    int n = 0;
    std::optional<double> p, a, b, theta;
    std::string profile = "nearextremal";
    double R = 1.0;                  // mollifier radius
    double eps = 0.2;                // near-extremal decay offset
    double r_in = 0.05;
    double r_out = 20.0;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 1 << 16;
    long long mc_samples = 1000000;
    std::uint64_t seed = 1;
    double radius_cap = 0.0;         // 0 = cover the profile support
    double tol = 1e-6;               // closed-form crosscheck tolerance
    bool with_mc = false;
    std::string rellich_variant = "lambda2";  // or "lambda" (the printed form)
    std::string format = "json";     // json | csv | text
    std::string out_path;            // empty = stdout
    std::string config_path;
};

InequalityCase case_from_config(const RunConfig& cfg);
RadialProfile profile_from_config(const RunConfig& cfg, const InequalityCase& c);
QuadratureSpec quad_spec_from_config(const RunConfig& cfg);

// Standard pairing of every case variant with compatible profiles; the
// inequality battery runs verify_case over all of them.
struct BatteryItem {
    InequalityCase inequality_case;
    RadialProfile profile;
};
std::vector<BatteryItem> standard_battery();

// Entry point. Returns the process exit code: 0 success, 1 domain error,
// 2 numerical failure, 3 inequality-violation diagnostic, 64 usage error.
int run(const std::vector<std::string>& args);

}  // namespace sharpineq::cli
