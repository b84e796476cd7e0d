#include "sharpineq/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sharpineq/constants.hpp"
#include "sharpineq/fields.hpp"
#include "sharpineq/optimize.hpp"
#include "sharpineq/report.hpp"

namespace sharpineq::cli {

namespace {

void write_case(JsonWriter& w, const InequalityCase& c) {
    w.begin_object();
    w.field("variant", variant_name(c.variant()));
    w.field("n", c.n());
    w.field("p", c.p());
    if (c.has_weights()) {
        w.field("a", c.a());
        w.field("b", c.b());
    }
    if (c.has_theta()) w.field("theta", c.theta());
    w.end_object();
}

void write_config(JsonWriter& w, const RunConfig& cfg) {
    w.key("config").begin_object();
    w.field("command", cfg.command);
    w.field("case", cfg.case_name);
    w.field("n", cfg.n);
    if (cfg.p) w.field("p", *cfg.p);
    if (cfg.a) w.field("a", *cfg.a);
    if (cfg.b) w.field("b", *cfg.b);
    if (cfg.theta) w.field("theta", *cfg.theta);
    w.field("profile", cfg.profile);
    w.field("R", cfg.R);
    w.field("eps", cfg.eps);
    w.field("r_in", cfg.r_in);
    w.field("r_out", cfg.r_out);
    w.field("rel_tol", cfg.rel_tol);
    w.field("abs_tol", cfg.abs_tol);
    w.field("max_subdivisions", cfg.max_subdivisions);
    w.field("mc_samples", cfg.mc_samples);
    w.field("seed", static_cast<unsigned long long>(cfg.seed));
    w.field("radius_cap", cfg.radius_cap);
    w.field("tol", cfg.tol);
    w.field("with_mc", cfg.with_mc);
    w.field("rellich_variant", cfg.rellich_variant);
    w.field("format", cfg.format);
    w.field("out", cfg.out_path);
    w.end_object();
}

void write_verification(JsonWriter& w, const VerificationReport& rep) {
    w.begin_object();
    w.key("case");
    write_case(w, rep.inequality_case);
    w.field("profile", rep.profile);
    w.field("lhs", rep.lhs);
    w.field("rhs", rep.rhs);
    w.field("constant", rep.constant.value);
    w.field("provenance", rep.constant.provenance);
    w.field("ratio", rep.ratio);
    w.field("margin", rep.margin);
    w.key("quadrature").begin_object();
    w.field("lhs_error", rep.quadrature.lhs_error);
    w.field("rhs_error", rep.quadrature.rhs_error);
    w.field("lhs_panels", rep.quadrature.lhs_panels);
    w.field("rhs_panels", rep.quadrature.rhs_panels);
    w.end_object();
    if (rep.mc) {
        w.key("mc").begin_object();
        w.field("lhs_estimate", rep.mc->lhs_estimate);
        w.field("lhs_std_error", rep.mc->lhs_std_error);
        w.field("lhs_reference", rep.mc->lhs_reference);
        w.field("lhs_within_3se", rep.mc->lhs_within_3se);
        w.field("rhs_estimate", rep.mc->rhs_estimate);
        w.field("rhs_std_error", rep.mc->rhs_std_error);
        w.field("rhs_reference", rep.mc->rhs_reference);
        w.field("rhs_within_3se", rep.mc->rhs_within_3se);
        w.end_object();
    } else {
        w.key("mc").null_value();
    }
    w.field("seed", static_cast<unsigned long long>(rep.seed));
    w.field("ratio_exceeds_one", rep.ratio_exceeds_one);
    w.end_object();
}

void write_optimization(JsonWriter& w, const OptimizationResult& res) {
    w.begin_object();
    w.key("argmin").begin_array();
    for (double x : res.argmin) w.value(x);
    w.end_array();
    w.field("min_value", res.min_value);
    w.field("evaluations", res.evaluations);
    w.field("converged", res.converged);
    w.key("closed_form_argmin").begin_array();
    for (double x : res.closed_form_argmin) w.value(x);
    w.end_array();
    if (res.closed_form_value) w.field("closed_form_value", *res.closed_form_value);
    else w.key("closed_form_value").null_value();
    if (res.discrepancy.empty()) w.key("discrepancy").null_value();
    else w.field("discrepancy", res.discrepancy);
    w.field("second_difference", res.second_difference);
    if (res.hessian_det) {
        w.field("hessian_det", *res.hessian_det);
        w.key("hessian_eigenvalues").begin_array();
        for (double x : res.hessian_eigenvalues) w.value(x);
        w.end_array();
    }
    w.end_object();
}

struct FieldCheck {
    std::string kind;
    int n;
    double exponent;
    int points;
    double max_err;
    double tol;
    bool pass;
};

std::vector<FieldCheck> run_field_checks(std::uint64_t seed) {
    struct Grid {
        FieldKind kind;
        int n;
        double exponent;
    };
    const Grid grids[] = {
        {FieldKind::HardyV, 3, 2.0}, {FieldKind::HardyV, 4, 3.0}, {FieldKind::HardyV, 5, 2.5},
        {FieldKind::HardyV, 2, 3.0}, {FieldKind::CknW, 3, 1.0},   {FieldKind::CknW, 5, 1.5},
        {FieldKind::CknW, 4, 0.8},   {FieldKind::CknW, 6, -0.5},
    };
    std::vector<FieldCheck> checks;
    for (const Grid& g : grids) {
        RadialVectorField field = make_field(g.kind, g.n, g.exponent);
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (checks.size() + 1)));
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double max_err = 0.0;
        const int points = 200;
        for (int i = 0; i < points; ++i) {
            std::vector<double> x(g.n);
            double norm = 0.0;
            do {
                norm = 0.0;
                for (double& xi : x) {
                    xi = normal(rng);
                    norm += xi * xi;
                }
                norm = std::sqrt(norm);
            } while (norm == 0.0);
            const double radius = std::pow(10.0, -1.0 + 2.0 * unif(rng));  // [0.1, 10]
            for (double& xi : x) xi *= radius / norm;
            const double fd = divergence_fd(field, x);
            const double exact = divergence_exact(field, x);
            const double err = std::abs(fd - exact) / (1.0 + std::abs(exact));
            max_err = std::max(max_err, err);
        }
        const double tol = 1e-5;
        checks.push_back({g.kind == FieldKind::HardyV ? "hardy_v" : "ckn_w", g.n, g.exponent,
                          points, max_err, tol, max_err <= tol});
    }
    return checks;
}

void write_field_checks(JsonWriter& w, const std::vector<FieldCheck>& checks) {
    w.begin_array();
    for (const FieldCheck& c : checks) {
        w.begin_object();
        w.field("kind", c.kind);
        w.field("n", c.n);
        w.field("exponent", c.exponent);
        w.field("points", c.points);
        w.field("max_err", c.max_err);
        w.field("tol", c.tol);
        w.field("pass", c.pass);
        w.end_object();
    }
    w.end_array();
}

void emit(const RunConfig& cfg, const std::string& payload) {
    if (cfg.out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw DomainError("cannot open output path: " + cfg.out_path);
        f << payload;
        if (!payload.empty() && payload.back() != '\n') f << '\n';
    }
}

std::string case_label(const InequalityCase& c) {
    std::string s = variant_name(c.variant());
    char buf[96];
    std::snprintf(buf, sizeof buf, " n=%d p=%g", c.n(), c.p());
    s += buf;
    if (c.has_weights()) {
        std::snprintf(buf, sizeof buf, " a=%g b=%g", c.a(), c.b());
        s += buf;
    }
    return s;
}

}  // namespace

InequalityCase case_from_config(const RunConfig& cfg) {
    auto v = variant_from_name(cfg.case_name);
    if (!v) throw DomainError("unknown case name: " + cfg.case_name);
    CaseParams prm;
    prm.n = cfg.n;
    prm.p = cfg.p;
    prm.a = cfg.a;
    prm.b = cfg.b;
    prm.theta = cfg.theta;
    return make_case(*v, prm);
}

RadialProfile profile_from_config(const RunConfig& cfg, const InequalityCase& c) {
    if (cfg.profile == "mollifier") return RadialProfile::mollifier(cfg.R);
    if (cfg.profile == "nearextremal" || cfg.profile == "near-extremal")
        return RadialProfile::near_extremal_for(c, cfg.eps, cfg.r_in, cfg.r_out);
    throw DomainError("unknown profile family: " + cfg.profile);
}

QuadratureSpec quad_spec_from_config(const RunConfig& cfg) {
    QuadratureSpec spec;
    spec.rel_tol = cfg.rel_tol;
    spec.abs_tol = cfg.abs_tol;
    spec.max_subdivisions = cfg.max_subdivisions;
    return spec;
}

std::vector<BatteryItem> standard_battery() {
    std::vector<BatteryItem> items;
    auto near = [](const InequalityCase& c) {
        return RadialProfile::near_extremal_for(c, 0.2, 0.05, 20.0);
    };
    auto moll = [] { return RadialProfile::mollifier(1.0); };
    auto add = [&](const InequalityCase& c, const RadialProfile& p) {
        items.push_back({c, p});
    };

    add(hardy_case(3, 2.0), moll());
    add(hardy_case(3, 2.0), near(hardy_case(3, 2.0)));
    add(hardy_case(4, 3.0), moll());
    add(hardy_case(4, 3.0), near(hardy_case(4, 3.0)));
    add(hardy_case(5, 2.0), moll());
    add(hardy_case(6, 2.5), near(hardy_case(6, 2.5)));
    add(hardy_case(7, 5.0), moll());

    add(hardy_supercritical_case(2, 3.0), near(hardy_supercritical_case(2, 3.0)));
    add(hardy_supercritical_case(3, 4.5), near(hardy_supercritical_case(3, 4.5)));
    add(hardy_supercritical_case(2, 2.5), near(hardy_supercritical_case(2, 2.5)));

    add(hardy_1d_case(1.5), near(hardy_1d_case(1.5)));
    add(hardy_1d_case(2.0), near(hardy_1d_case(2.0)));
    add(hardy_1d_case(2.0), moll());
    add(hardy_1d_case(3.0), moll());

    add(ckn_plus1_case(3, 0.0), moll());
    add(ckn_plus1_case(5, 0.5), near(ckn_plus1_case(5, 0.5)));
    add(ckn_plus1_case(4, -1.0), moll());
    add(ckn_plus1_case(6, 1.5), near(ckn_plus1_case(6, 1.5)));

    // the b = a edge carries the printed-K deficit; these points keep the
    // branch-ratio slack large enough that the printed constant still holds
    add(ckn_equal_case(3, -0.5), near(ckn_equal_case(3, -0.5)));
    add(ckn_equal_case(4, -1.0), moll());
    add(ckn_equal_case(5, -2.0), moll());

    add(ckn_case(3, 0.0, 0.5), moll());
    add(ckn_case(3, 0.0, 0.5), near(ckn_case(3, 0.0, 0.5)));
    add(ckn_case(4, 0.3, 0.9), near(ckn_case(4, 0.3, 0.9)));
    add(ckn_case(5, -0.5, 0.2), moll());

    add(rellich_case(5), near(rellich_case(5)));
    add(rellich_case(5), moll());
    add(rellich_case(6), moll());
    add(rellich_case(8), near(rellich_case(8)));
    return items;
}

namespace {

int cmd_constants(const RunConfig& cfg) {
    InequalityCase c = case_from_config(cfg);
    SharpConstant sc = sharp_constant(c);
    if (cfg.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("command", "constants");
        w.key("case");
        write_case(w, c);
        w.field("value", sc.value);
        w.field("provenance", sc.provenance);
        write_config(w, cfg);
        w.end_object();
        emit(cfg, w.str());
    } else if (cfg.format == "csv") {
        std::string s = "key,value\n";
        s += "case," + std::string(variant_name(c.variant())) + "\n";
        s += "n," + std::to_string(c.n()) + "\n";
        s += "p," + format_double(c.p()) + "\n";
        if (c.has_weights()) {
            s += "a," + format_double(c.a()) + "\n";
            s += "b," + format_double(c.b()) + "\n";
        }
        s += "value," + format_double(sc.value) + "\n";
        emit(cfg, s);
    } else {
        std::ostringstream os;
        os << case_label(c) << "\n  sharp constant = " << format_double(sc.value) << "  ["
           << sc.provenance << "]\n";
        emit(cfg, os.str());
    }
    return 0;
}

RellichVariant rellich_variant_from(const RunConfig& cfg) {
    if (cfg.rellich_variant == "lambda") return RellichVariant::LambdaHalf;
    if (cfg.rellich_variant == "lambda2") return RellichVariant::LambdaSquaredHalf;
    throw DomainError("unknown rellich variant: " + cfg.rellich_variant +
                      " (expected lambda or lambda2)");
}

int cmd_optimize(const RunConfig& cfg) {
    InequalityCase c = case_from_config(cfg);
    OptimizationResult res = crosscheck_closed_forms(c, cfg.tol, rellich_variant_from(cfg));
    if (cfg.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("command", "optimize");
        w.key("case");
        write_case(w, c);
        w.key("result");
        write_optimization(w, res);
        write_config(w, cfg);
        w.end_object();
        emit(cfg, w.str());
    } else if (cfg.format == "csv") {
        std::string s = "key,value\n";
        for (std::size_t i = 0; i < res.argmin.size(); ++i)
            s += "argmin" + std::to_string(i) + "," + format_double(res.argmin[i]) + "\n";
        s += "min_value," + format_double(res.min_value) + "\n";
        s += "evaluations," + std::to_string(res.evaluations) + "\n";
        s += "converged," + std::string(res.converged ? "true" : "false") + "\n";
        s += "discrepancy," + (res.discrepancy.empty() ? std::string("none")
                                                       : "\"" + res.discrepancy + "\"") + "\n";
        emit(cfg, s);
    } else {
        std::ostringstream os;
        os << case_label(c) << "\n  numeric argmin =";
        for (double x : res.argmin) os << ' ' << format_double(x);
        os << "\n  numeric minimum = " << format_double(res.min_value) << "\n  evaluations = "
           << res.evaluations << "\n";
        if (!res.closed_form_argmin.empty()) {
            os << "  printed minimizer =";
            for (double x : res.closed_form_argmin) os << ' ' << format_double(x);
            os << "\n";
        }
        if (res.closed_form_value)
            os << "  printed minimum = " << format_double(*res.closed_form_value) << "\n";
        os << "  discrepancy: " << (res.discrepancy.empty() ? "none" : res.discrepancy) << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    InequalityCase c = case_from_config(cfg);
    RadialProfile prof = profile_from_config(cfg, c);
    std::optional<McSpec> mc;
    if (cfg.with_mc) {
        McSpec ms;
        ms.samples = cfg.mc_samples;
        ms.seed = cfg.seed;
        ms.radius_cap = cfg.radius_cap;
        mc = ms;
    }
    VerificationReport rep = verify_case(c, prof, quad_spec_from_config(cfg), mc);
    if (cfg.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("command", "verify");
        w.key("report");
        write_verification(w, rep);
        write_config(w, cfg);
        w.end_object();
        emit(cfg, w.str());
    } else if (cfg.format == "csv") {
        std::string s = "lhs,rhs,constant,ratio,margin\n";
        s += csv_row({rep.lhs, rep.rhs, rep.constant.value, rep.ratio, rep.margin});
        emit(cfg, s);
    } else {
        std::ostringstream os;
        os << case_label(c) << "\n  profile: " << rep.profile << "\n  lhs = "
           << format_double(rep.lhs) << "\n  rhs = " << format_double(rep.rhs)
           << "\n  constant = " << format_double(rep.constant.value)
           << "\n  ratio = " << format_double(rep.ratio)
           << "\n  margin = " << format_double(rep.margin)
           << "\n  wall_time_ms = " << format_double(rep.wall_time_ms) << "\n";
        if (rep.mc) {
            os << "  mc lhs = " << format_double(rep.mc->lhs_estimate) << " +- "
               << format_double(rep.mc->lhs_std_error)
               << (rep.mc->lhs_within_3se ? " (within 3se)" : " (OUTSIDE 3se)") << "\n";
            os << "  mc rhs = " << format_double(rep.mc->rhs_estimate) << " +- "
               << format_double(rep.mc->rhs_std_error)
               << (rep.mc->rhs_within_3se ? " (within 3se)" : " (OUTSIDE 3se)") << "\n";
        }
        if (rep.ratio_exceeds_one) os << "  FAILURE: ratio exceeds 1\n";
        emit(cfg, os.str());
    }
    return rep.ratio_exceeds_one ? 3 : 0;
}

int cmd_sweep(const RunConfig& cfg, bool explicit_window) {
    InequalityCase c = case_from_config(cfg);
    std::vector<ScheduleEntry> schedule;
    if (explicit_window) {
        ScheduleEntry e;
        if (cfg.profile == "mollifier") {
            e.family = ProfileFamily::Mollifier;
            e.R = cfg.R;
        } else {
            e.eps = cfg.eps;
            e.r_in = cfg.r_in;
            e.r_out = cfg.r_out;
        }
        schedule.push_back(e);
    } else {
        schedule = canonical_schedule(c);
    }
    SweepSeries series = sweep(c, schedule, quad_spec_from_config(cfg));
    if (cfg.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("command", "sweep");
        w.key("case");
        write_case(w, c);
        w.key("entries").begin_array();
        for (const SweepEntryResult& r : series.entries) {
            w.begin_object();
            w.field("param", r.entry.param());
            if (r.entry.family == ProfileFamily::Mollifier) {
                w.field("R", r.entry.R);
            } else {
                w.field("eps", r.entry.eps);
                w.field("r_in", r.entry.r_in);
                w.field("r_out", r.entry.r_out);
            }
            w.field("lhs", r.lhs);
            w.field("rhs", r.rhs);
            w.field("ratio", r.ratio);
            w.field("margin", r.margin);
            w.end_object();
        }
        w.end_array();
        w.field("sup_ratio", series.sup_ratio);
        write_config(w, cfg);
        w.end_object();
        emit(cfg, w.str());
    } else if (cfg.format == "csv") {
        std::string s = "param,lhs,rhs,ratio,margin\n";
        for (const SweepEntryResult& r : series.entries)
            s += csv_row({r.entry.param(), r.lhs, r.rhs, r.ratio, r.margin});
        emit(cfg, s);
    } else {
        std::ostringstream os;
        os << "sweep " << case_label(c) << "\n";
        for (const SweepEntryResult& r : series.entries)
            os << "  param=" << format_double(r.entry.param()) << "  ratio="
               << format_double(r.ratio) << "  margin=" << format_double(r.margin) << "\n";
        os << "  sup_ratio = " << format_double(series.sup_ratio) << "\n";
        emit(cfg, os.str());
    }
    return 0;
}

int cmd_fields(const RunConfig& cfg) {
    std::vector<FieldCheck> checks = run_field_checks(cfg.seed);
    bool all_pass = true;
    for (const FieldCheck& c : checks) all_pass = all_pass && c.pass;
    if (cfg.format == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("command", "fields");
        w.key("checks");
        write_field_checks(w, checks);
        w.field("all_pass", all_pass);
        write_config(w, cfg);
        w.end_object();
        emit(cfg, w.str());
    } else if (cfg.format == "csv") {
        std::string s = "kind,n,exponent,points,max_err,tol,pass\n";
        for (const FieldCheck& c : checks) {
            s += c.kind + "," + std::to_string(c.n) + "," + format_double(c.exponent) + "," +
                 std::to_string(c.points) + "," + format_double(c.max_err) + "," +
                 format_double(c.tol) + "," + (c.pass ? "true" : "false") + "\n";
        }
        emit(cfg, s);
    } else {
        std::ostringstream os;
        for (const FieldCheck& c : checks)
            os << c.kind << " n=" << c.n << " exponent=" << format_double(c.exponent)
               << "  max_err=" << format_double(c.max_err) << (c.pass ? "  ok" : "  FAIL") << "\n";
        emit(cfg, os.str());
    }
    return all_pass ? 0 : 2;
}

int cmd_all(const RunConfig& cfg) {
    JsonWriter w;
    w.begin_object();
    w.field("command", "all");
    w.field("seed", static_cast<unsigned long long>(cfg.seed));

    // constants table
    struct ConstRow {
        InequalityCase c;
    };
    const InequalityCase table[] = {
        hardy_case(3, 2.0),          hardy_supercritical_case(2, 3.0),
        hardy_1d_case(2.0),          ckn_plus1_case(5, 0.0),
        ckn_equal_case(3, -0.5),     ckn_case(3, 0.0, 0.5),
        rellich_case(5),             rellich_case(8),
    };
    w.key("constants").begin_array();
    for (const InequalityCase& c : table) {
        SharpConstant sc = sharp_constant(c);
        w.begin_object();
        w.key("case");
        write_case(w, c);
        w.field("value", sc.value);
        w.field("provenance", sc.provenance);
        w.end_object();
    }
    w.end_array();

    // closed-form crosschecks
    const InequalityCase grid[] = {
        hardy_case(3, 2.0),           hardy_case(4, 3.0),
        hardy_case(5, 2.5),           hardy_supercritical_case(2, 3.0),
        hardy_supercritical_case(3, 5.0), hardy_1d_case(2.0),
        ckn_plus1_case(3, 0.0),       ckn_plus1_case(4, 0.5),
        ckn_plus1_case(5, -1.0),      ckn_equal_case(3, -0.5),
        ckn_equal_case(4, 0.6),       ckn_equal_case(5, -2.0),
    };
    w.key("crosschecks").begin_array();
    for (const InequalityCase& c : grid) {
        OptimizationResult res = crosscheck_closed_forms(c, cfg.tol);
        w.begin_object();
        w.key("case");
        write_case(w, c);
        w.key("result");
        write_optimization(w, res);
        w.end_object();
    }
    w.end_array();

    // inequality battery
    bool any_violation = false;
    QuadratureSpec spec = quad_spec_from_config(cfg);
    w.key("battery").begin_array();
    for (const BatteryItem& item : standard_battery()) {
        VerificationReport rep = verify_case(item.inequality_case, item.profile, spec);
        any_violation = any_violation || rep.ratio_exceeds_one;
        write_verification(w, rep);
    }
    w.end_array();

    // short sharpness sweeps (first rungs of the canonical ladders)
    w.key("sweeps").begin_array();
    for (const InequalityCase& c : {hardy_case(3, 2.0), ckn_plus1_case(5, 0.5)}) {
        std::vector<ScheduleEntry> sched = canonical_schedule(c);
        sched.resize(std::min<std::size_t>(sched.size(), 5));
        SweepSeries series = sweep(c, sched, spec);
        w.begin_object();
        w.key("case");
        write_case(w, c);
        w.key("ratios").begin_array();
        for (double r : series.ratios) w.value(r);
        w.end_array();
        w.field("sup_ratio", series.sup_ratio);
        w.end_object();
    }
    w.end_array();

    // divergence identities
    std::vector<FieldCheck> checks = run_field_checks(cfg.seed);
    w.key("fields");
    write_field_checks(w, checks);

    // pointwise Young inequality
    const double lambdas[] = {0.5, 1.0, 2.0};
    YoungReport young = young_pointwise_check_random(3.0, 500, 5, lambdas, cfg.seed);
    w.key("young").begin_object();
    w.field("p", 3.0);
    w.field("checks", static_cast<long long>(young.checks));
    w.field("min_slack", young.min_slack);
    w.field("max_slack", young.max_slack);
    w.field("violations", static_cast<long long>(young.violations));
    w.end_object();

    // Hölder interpolation split
    HolderReport holder =
        holder_split_check(3, 0.0, 0.5, RadialProfile::mollifier(1.0), spec);
    w.key("holder").begin_object();
    w.field("p", holder.p);
    w.field("b", holder.b);
    w.field("theta", holder.theta);
    w.field("lhs", holder.lhs);
    w.field("rhs", holder.rhs);
    w.field("ratio", holder.ratio);
    w.end_object();

    write_config(w, cfg);
    w.end_object();
    emit(cfg, w.str());
    return any_violation ? 3 : 0;
}

void load_config_file(RunConfig& cfg) {
    std::ifstream f(cfg.config_path);
    if (!f) throw DomainError("cannot open config file: " + cfg.config_path);
    nlohmann::json j;
    f >> j;
    auto get = [&](const char* key, auto& target) {
        if (j.contains(key)) target = j.at(key).template get<std::decay_t<decltype(target)>>();
    };
    auto get_opt = [&](const char* key, std::optional<double>& target) {
        if (j.contains(key) && !j.at(key).is_null()) target = j.at(key).get<double>();
    };
    get("case", cfg.case_name);
    get("n", cfg.n);
    get_opt("p", cfg.p);
    get_opt("a", cfg.a);
    get_opt("b", cfg.b);
    get_opt("theta", cfg.theta);
    get("profile", cfg.profile);
    get("R", cfg.R);
    get("eps", cfg.eps);
    get("r_in", cfg.r_in);
    get("r_out", cfg.r_out);
    get("rel_tol", cfg.rel_tol);
    get("abs_tol", cfg.abs_tol);
    get("max_subdivisions", cfg.max_subdivisions);
    get("mc_samples", cfg.mc_samples);
    get("seed", cfg.seed);
    get("radius_cap", cfg.radius_cap);
    get("tol", cfg.tol);
    get("with_mc", cfg.with_mc);
    get("rellich_variant", cfg.rellich_variant);
    get("format", cfg.format);
    get("out", cfg.out_path);
}

}  // namespace

int run(const std::vector<std::string>& args) {
    RunConfig cfg;

    // config file first so that explicit flags override it
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            cfg.config_path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            cfg.config_path = args[i].substr(9);
            break;
        }
    }
    try {
        if (!cfg.config_path.empty()) load_config_file(cfg);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config file is not valid JSON: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"sharp constants of the Hardy, CKN and Rellich inequalities"};
    app.require_subcommand(1);
    double p_val = 0, a_val = 0, b_val = 0, theta_val = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--case", cfg.case_name,
                        "case variant: hardy | hardy-super | hardy1d | ckn-plus1 | ckn-equal | "
                        "ckn | rellich");
        sub->add_option("--n", cfg.n, "dimension");
        sub->add_option("--p", p_val, "integrability exponent (Hardy variants)");
        sub->add_option("--a", a_val, "weight exponent a (CKN)");
        sub->add_option("--b", b_val, "weight exponent b (CKN interpolated)");
        sub->add_option("--theta", theta_val, "interpolation parameter (CKN interpolated)");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--tol", cfg.tol, "closed-form crosscheck tolerance");
        sub->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
        sub->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
        sub->add_option("--config", cfg.config_path, "JSON config file (flags override)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "json | csv | text");
        sub->add_option("--profile", cfg.profile, "mollifier | nearextremal");
        sub->add_option("--radius", cfg.R, "mollifier radius R");
        sub->add_option("--eps", cfg.eps, "near-extremal decay offset");
        sub->add_option("--rin", cfg.r_in, "near-extremal inner plateau radius");
        sub->add_option("--rout", cfg.r_out, "near-extremal outer cutoff radius");
        sub->add_option("--samples", cfg.mc_samples, "Monte Carlo samples");
        sub->add_option("--radius-cap", cfg.radius_cap, "Monte Carlo sampling ball radius");
        sub->add_option("--rellich-variant", cfg.rellich_variant,
                        "Rellich objective prefactor: lambda2 (derived) | lambda (printed)");
        sub->add_flag("--mc", cfg.with_mc, "attach a Monte Carlo crosscheck");
    };

    CLI::App* c_constants = app.add_subcommand("constants", "evaluate the sharp constant");
    CLI::App* c_optimize =
        app.add_subcommand("optimize", "minimize the auxiliary objective and crosscheck");
    CLI::App* c_verify = app.add_subcommand("verify", "verify the inequality on a profile");
    CLI::App* c_sweep = app.add_subcommand("sweep", "near-extremal sharpness sweep");
    CLI::App* c_fields = app.add_subcommand("fields", "check the divergence identities");
    CLI::App* c_all = app.add_subcommand("all", "full battery, one JSON report");
    for (CLI::App* sub : {c_constants, c_optimize, c_verify, c_sweep, c_fields, c_all})
        add_common(sub);

    std::vector<const char*> argv;
    argv.push_back("sharpineq");
    for (const std::string& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 64;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub->count("--p")) cfg.p = p_val;
    if (sub->count("--a")) cfg.a = a_val;
    if (sub->count("--b")) cfg.b = b_val;
    if (sub->count("--theta")) cfg.theta = theta_val;
    const bool explicit_window =
        sub->count("--eps") || sub->count("--rin") || sub->count("--rout") ||
        sub->count("--radius") || cfg.profile == "mollifier";

    try {
        if (cfg.command == "constants") return cmd_constants(cfg);
        if (cfg.command == "optimize") return cmd_optimize(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "sweep") return cmd_sweep(cfg, explicit_window);
        if (cfg.command == "fields") return cmd_fields(cfg);
        if (cfg.command == "all") return cmd_all(cfg);
        std::cerr << "usage error: unknown command\n";
        return 64;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const IntegrabilityError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const ToleranceNotMet& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const NoFeasiblePoint& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const NonFinite& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace sharpineq::cli
