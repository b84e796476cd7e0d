#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sharpineq/cli.hpp"
#include "sharpineq/report.hpp"

using namespace sharpineq;
using nlohmann::json;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("cli_test_") + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int run_cli(std::initializer_list<std::string> args) {
    return cli::run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("constants command emits the hardy value") {
    const std::string out = temp_path("constants.json");
    int rc = run_cli({"constants", "--case", "hardy", "--n", "3", "--p", "2", "--format", "json",
                      "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("command") == "constants");
    CHECK(j.at("value").get<double>() == 4.0);
    CHECK(j.at("case").at("variant") == "hardy");
    CHECK(j.at("config").at("format") == "json");
    std::remove(out.c_str());
}

TEST_CASE("optimize command flags the printed 1d argmin") {
    const std::string out = temp_path("optimize.json");
    int rc = run_cli({"optimize", "--case", "hardy1d", "--p", "2", "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    const auto& res = j.at("result");
    CHECK(res.at("argmin").at(0).get<double>() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(res.at("min_value").get<double>() == doctest::Approx(4.0));
    CHECK(!res.at("discrepancy").is_null());
    std::remove(out.c_str());
}

TEST_CASE("verify domain gate exits 1") {
    int rc = run_cli({"verify", "--case", "rellich", "--n", "4"});
    CHECK(rc == 1);
    // numerical-failure path: rellich optimization has an empty feasible region
    CHECK(run_cli({"optimize", "--case", "rellich", "--n", "5"}) == 2);
    // integrability misuse maps to a domain error as well
    CHECK(run_cli({"verify", "--case", "hardy-super", "--n", "2", "--p", "3", "--profile",
                   "mollifier"}) == 1);
}

TEST_CASE("a ratio above one is reported as the failure diagnostic, exit 3") {
    // the printed equal-edge constant is numerically too small at this point;
    // the verifier must flag it rather than hide it
    const std::string out = temp_path("violation.json");
    int rc = run_cli({"verify", "--case", "ckn-equal", "--n", "5", "--a", "1", "--profile",
                      "mollifier", "--radius", "1", "--out", out});
    CHECK(rc == 3);
    json j = json::parse(slurp(out));
    CHECK(j.at("report").at("ratio_exceeds_one").get<bool>());
    CHECK(j.at("report").at("ratio").get<double>() > 1.0);
    std::remove(out.c_str());
}

TEST_CASE("usage errors exit 64, help exits 0") {
    CHECK(run_cli({"no-such-command"}) == 64);
    CHECK(run_cli({}) == 64);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("interpolated case accepts b or theta and rejects a supplied p") {
    const std::string out = temp_path("interp.json");
    CHECK(run_cli({"constants", "--case", "ckn", "--n", "3", "--a", "0", "--b", "0.5", "--out",
                   out}) == 0);
    json via_b = json::parse(slurp(out));
    CHECK(run_cli({"constants", "--case", "ckn", "--n", "3", "--a", "0", "--theta", "0.25",
                   "--out", out}) == 0);
    json via_theta = json::parse(slurp(out));
    CHECK(via_b.at("value").get<double>() == via_theta.at("value").get<double>());
    CHECK(via_b.at("case").at("theta").get<double>() == doctest::Approx(0.25));
    CHECK(run_cli({"constants", "--case", "ckn", "--n", "3", "--a", "0", "--b", "0.5", "--p",
                   "3"}) == 1);
    std::remove(out.c_str());
}

TEST_CASE("verify json round-trips into the same record") {
    const std::string out = temp_path("verify.json");
    int rc = run_cli({"verify", "--case", "hardy", "--n", "3", "--p", "2", "--profile",
                      "mollifier", "--radius", "1", "--out", out});
    CHECK(rc == 0);
    const std::string text = slurp(out);
    json j = json::parse(text);
    const auto& rep = j.at("report");

    // independent recomputation of the same report
    QuadratureSpec spec;
    VerificationReport direct =
        verify_case(hardy_case(3, 2.0), RadialProfile::mollifier(1.0), spec);
    CHECK(rep.at("lhs").get<double>() == direct.lhs);  // %.17g round-trips bit-exactly
    CHECK(rep.at("rhs").get<double>() == direct.rhs);
    CHECK(rep.at("ratio").get<double>() == direct.ratio);
    CHECK(rep.at("margin").get<double>() == direct.margin);
    CHECK(rep.at("constant").get<double>() == direct.constant.value);
    std::remove(out.c_str());
}

TEST_CASE("sweep csv has the fixed header and one row per entry") {
    const std::string out = temp_path("sweep.csv");
    int rc = run_cli({"sweep", "--case", "hardy", "--n", "3", "--p", "2", "--eps", "0.2", "--rin",
                      "0.05", "--rout", "20", "--format", "csv", "--out", out});
    CHECK(rc == 0);
    std::istringstream is(slurp(out));
    std::string line;
    std::getline(is, line);
    CHECK(line == "param,lhs,rhs,ratio,margin");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 1);
    std::remove(out.c_str());
}

TEST_CASE("config file values are used and flags win on conflict") {
    const std::string cfg_path = temp_path("config.json");
    {
        std::ofstream f(cfg_path);
        f << R"({"case":"hardy","n":3,"p":2.0,"format":"json","seed":77})";
    }
    const std::string out = temp_path("fromcfg.json");
    int rc = run_cli({"constants", "--config", cfg_path, "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("value").get<double>() == 4.0);
    CHECK(j.at("config").at("seed").get<std::uint64_t>() == 77);

    // flag overrides the config file's n
    rc = run_cli({"constants", "--config", cfg_path, "--n", "5", "--out", out});
    CHECK(rc == 0);
    j = json::parse(slurp(out));
    CHECK(j.at("case").at("n").get<int>() == 5);
    CHECK(j.at("value").get<double>() == doctest::Approx(std::pow(2.0 / 3.0, 2.0)));
    std::remove(cfg_path.c_str());
    std::remove(out.c_str());
}

TEST_CASE("fields command reports passing identity checks") {
    const std::string out = temp_path("fields.json");
    int rc = run_cli({"fields", "--seed", "5", "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("all_pass").get<bool>());
    CHECK(j.at("checks").size() >= 6);
    std::remove(out.c_str());
}

TEST_CASE("the full battery report is one valid json document") {
    const std::string out = temp_path("all.json");
    int rc = run_cli({"all", "--seed", "3", "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("battery").size() >= 25);
    CHECK(j.at("crosschecks").size() == 12);
    CHECK(j.at("sweeps").size() == 2);
    CHECK(j.at("young").at("violations").get<long>() == 0);
    CHECK(j.at("holder").at("ratio").get<double>() <= 1.0);
    for (const auto& rep : j.at("battery")) {
        CHECK(rep.at("ratio").get<double>() <= 1.0);
        CHECK(!rep.at("ratio_exceeds_one").get<bool>());
    }
    std::remove(out.c_str());
}

TEST_CASE("format_double round-trips doubles exactly") {
    for (double v : {1.0 / 3.0, 3.141592653589793, 0.1, 4.0, 1e-300, 6.62607015e-34}) {
        const double back = std::stod(format_double(v));
        CHECK(back == v);
    }
}

TEST_CASE("config file via the equals syntax") {
    const std::string cfg_path = temp_path("config_eq.json");
    {
        std::ofstream f(cfg_path);
        f << R"({"case":"rellich","n":6})";
    }
    const std::string out = temp_path("fromcfg_eq.json");
    int rc = run_cli({"constants", "--config=" + cfg_path, "--out", out});
    CHECK(rc == 0);
    json j = json::parse(slurp(out));
    CHECK(j.at("value").get<double>() == doctest::Approx(1.0 / 9.0));
    std::remove(cfg_path.c_str());
    std::remove(out.c_str());
}
