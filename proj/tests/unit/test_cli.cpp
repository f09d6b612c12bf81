#include "confrac/cli.hpp"
#include "confrac/report.hpp"

#include <doctest.h>
#include <json.hpp>

#include <set>
#include <sstream>

using namespace confrac;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("deriv example") {
    const auto r = run({"deriv", "--expr", "t", "--alpha", "0.5", "--at", "4"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "2\n");
    CHECK(r.err.empty());
    CHECK(run({"deriv", "--expr", "t^3", "--alpha", "1", "--at", "2", "--order", "2"}).out == "12\n");
}

TEST_CASE("steffensen counterexample through the CLI") {
    const auto r = run({"check", "--ineq", "steffensen", "--f", "-1", "--g", "0.5", "--alpha", "0.5", "--a", "0",
                        "--b", "1", "--json"});
    CHECK(r.code == cli::kHypothesisFailed);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["holds"] == false);
    CHECK(std::fabs(j["lower"].get<double>() - (-2 + std::sqrt(2.0))) < 1e-10);
    CHECK(j["actual"].get<double>() == -1.0);
    CHECK(j["hypotheses"][0]["name"] == "f >= 0");
    CHECK(j["hypotheses"][0]["verified"] == false);
    CHECK(j["hypotheses"][0]["witness"].get<double>() == 0.0);
    CHECK(j["hypotheses"][1]["witness"].is_null());
    std::set<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.insert(it.key());
    CHECK(keys == std::set<std::string>{"theorem", "alpha", "a", "b", "hypotheses", "lower", "actual", "upper",
                                        "slack_low", "slack_high", "holds"});
}

TEST_CASE("absent sides are omitted from JSON") {
    const auto r = run({"check", "--ineq", "ostrowski", "--f", "sin(t)", "--alpha", "1", "--a", "0", "--b", "3",
                        "--t", "1", "--M", "1", "--json"});
    CHECK(r.code == cli::kOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK_FALSE(j.contains("lower"));
    CHECK_FALSE(j.contains("slack_low"));
    CHECK(j.contains("upper"));
}

TEST_CASE("exit codes") {
    // 0: holds with verified hypotheses
    CHECK(run({"check", "--ineq", "hh2", "--f", "t^2", "--alpha", "1", "--a", "0", "--b", "1"}).code == cli::kOk);
    // 1: hypotheses pass on the grid yet the bound fails. f leaves [0, 1] only between the
    //    points of a coarse grid (sin(8 pi t) vanishes on multiples of 1/8).
    const std::string wild = "t + 5*sin(8*pi*t)";
    const auto v = run({"check", "--ineq", "gruss", "--f", wild, "--g", wild, "--m", "0", "--M", "1", "--m2", "0",
                        "--M2", "1", "--grid", "8", "--alpha", "1", "--a", "0", "--b", "1"});
    CHECK(v.code == cli::kViolated);
    CHECK(v.out.find("VIOLATED") != std::string::npos);
    // 2: hypothesis failed
    CHECK(run({"check", "--ineq", "cebysev", "--f", "sin(t)", "--g", "t", "--alpha", "1", "--a", "0", "--b", "6"})
              .code == cli::kHypothesisFailed);
    CHECK(run({"ell", "--g", "2", "--alpha", "1", "--a", "0", "--b", "1"}).code == cli::kHypothesisFailed);
    // 3: usage and parse errors
    auto u = run({"deriv", "--alpha", "1.5", "--expr", "t", "--at", "1"});
    CHECK(u.code == cli::kUsage);
    CHECK(count_lines(u.err) == 1);
    CHECK(run({"deriv", "--expr", "t +", "--alpha", "1", "--at", "1"}).code == cli::kUsage);
    CHECK(run({"integrate", "--expr", "t", "--alpha", "1", "--a", "2", "--b", "1"}).code == cli::kUsage);
    CHECK(run({"check", "--ineq", "hardy", "--f", "t", "--alpha", "1", "--a", "0", "--b", "1"}).code == cli::kUsage);
    CHECK(run({"check", "--ineq", "steffensen", "--f", "t", "--alpha", "1", "--a", "0", "--b", "1"}).code ==
          cli::kUsage);
    CHECK(run({"check", "--ineq", "rem-cebysev", "--f", "t", "--n", "-1", "--alpha", "1", "--a", "0", "--b", "1"})
              .code == cli::kUsage);
    CHECK(run({"bogus"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"solve", "--order", "2", "--rhs", "0", "--alpha", "1", "--from", "0", "--to", "1", "--init", "1"})
              .code == cli::kUsage);
    // 4: numeric failure
    auto n = run({"deriv", "--expr", "sqrt(t)", "--alpha", "1", "--at", "0"});
    CHECK(n.code == cli::kNumeric);
    CHECK(count_lines(n.err) == 1);
    CHECK(run({"deriv", "--expr", "sqrt(t - 5)", "--alpha", "1", "--at", "1"}).code == cli::kNumeric);
    // help
    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("other subcommands") {
    CHECK(run({"integrate", "--expr", "1", "--alpha", "0.5", "--a", "0", "--b", "1"}).out == "2\n");
    CHECK(run({"ell", "--g", "0.5", "--alpha", "0.5", "--a", "0", "--b", "1"}).out == "0.5\n");
    const auto t = run({"taylor", "--expr", "exp(t)", "--alpha", "1", "--center", "0", "--degree", "4", "--at", "1",
                        "--remainder"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("poly = 2.70833333333\n", 0) == 0);
    CHECK(t.out.find("remainder = ") != std::string::npos);
    const auto s = run({"solve", "--order", "1", "--coeffs", "1", "--rhs", "0", "--alpha", "1", "--from", "0",
                        "--to", "1", "--init", "1"});
    CHECK(std::fabs(std::stod(s.out) - std::exp(-1.0)) < 1e-6);
    const auto s2 = run({"solve", "--order", "2", "--rhs", "1", "--alpha", "0.5", "--from", "1", "--to", "4"});
    CHECK(s2.out == "2\n");
}

TEST_CASE("byte-identical reruns") {
    const std::vector<std::string> args{"sweep", "--ineq", "gruss-montgomery", "--f", "exp(t^alpha/alpha)",
                                        "--t", "1.5", "--alphas", "0.1:1.0:0.1", "--a", "1", "--b", "2", "--json"};
    const auto first = run(args), second = run(args);
    CHECK(first.out == second.out);
    CHECK(first.code == second.code);
}

TEST_CASE("sweep") {
    const auto r = run({"sweep", "--ineq", "hh2", "--f", "t^2", "--alphas", "0.1:0.3:0.1", "--a", "1", "--b", "2"});
    CHECK(r.code == cli::kOk);
    CHECK(count_lines(r.out) == 4);
    CHECK(r.out.rfind(std::string(csv_header()), 0) == 0);
    CHECK(r.out.find("\nhh2,0.3,1,2,") != std::string::npos);

    // hypothesis failures become rows; the batch continues
    const auto mixed = run({"sweep", "--ineq", "steffensen", "--f", "1 - t", "--g", "0.5", "--alphas",
                            "0.1:1.0:0.1", "--windows", "0:1;0.5:2"});
    CHECK(count_lines(mixed.out) == 21);
    CHECK(mixed.code == cli::kHypothesisFailed);
    CHECK(mixed.out.find(",false,f >= 0") != std::string::npos);

    const auto thrown = run({"sweep", "--ineq", "cebysev", "--f", "sin(t)", "--g", "t", "--alphas", "0.5,1",
                             "--a", "0", "--b", "6", "--json"});
    const auto arr = nlohmann::json::parse(thrown.out);
    CHECK(arr.size() == 2);
    CHECK(arr[0]["holds"] == false);
    CHECK(run({"sweep", "--ineq", "hh2", "--f", "t", "--alphas", "0:1:0.5", "--a", "0", "--b", "1"}).code ==
          cli::kUsage);
}

TEST_CASE("text report line") {
    InequalityReport r;
    r.theorem = Theorem::Cebysev;
    r.lower = 0.25;
    r.actual = 1.0 / 3;
    finalize(r);
    const auto txt = emit_report(r, Format::Text);
    CHECK(txt.find("HOLDS  lower ≤ actual ≤ upper  0.25 ≤ 0.333333333333 ≤ -\n") != std::string::npos);
    const auto csv = emit_reports({r, r, r}, Format::Csv);
    CHECK(count_lines(csv) == 4);
    CHECK(format_number(1.0 / 3) == "0.333333333333");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

}  // TEST_SUITE
