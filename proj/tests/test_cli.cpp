#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "expop/cli.hpp"

using namespace expop;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "expop_cli_test";
    fs::create_directories(d);
    return d;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path p = scratch_dir() / name;
    std::ofstream(p) << body;
    return p;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) {
        v.push_back(l);
    }
    return v;
}

const char* kSmallConfig =
    R"({"function": "xsinx", "a_ladder": [10, 1, "PW"], "lambda_ladder": [10, 100],
        "x_grid": {"lo": 0.5, "hi": 2.0, "count": 4}, "rel_tol": 1e-10})";

}  // namespace

TEST_CASE("apply") {
    auto r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "e2"});
    CHECK(r.code == cli::kExitOk);
    CHECK(std::stod(r.out) == doctest::Approx(1.2).epsilon(1e-12));
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "-3", "--fn", "e1"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(-3.0).epsilon(1e-12));
    r = run({"apply", "--lambda", "10", "--a", "PW", "--x", "1", "--fn", "e2"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(1.1).epsilon(1e-12));
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "e2", "--p", "1", "--format", "csv"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "value");
    CHECK(std::stod(ls[1]) == doctest::Approx(2.2).epsilon(1e-10));
    r = run({"apply", "--lambda", "1", "--a", "1", "--x", "0", "--fn", "exp", "--theta", "0.7853981633974483",
             "--format", "json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("value").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("moments table") {
    const auto r = run({"moments", "--lambda", "10", "--a", "1", "--x", "1", "--max-p", "6", "--format", "csv"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 8);
    CHECK(ls[0] == "p,raw_moment,central_moment,central_symbolic");
    const std::vector<double> mu{1, 0, 0.2, 0.04, 0.136, NAN, 0.18912};
    for (int p : {2, 3, 4, 6}) {
        std::istringstream row(ls[static_cast<std::size_t>(p) + 1]);
        std::string cell;
        std::vector<double> v;
        while (std::getline(row, cell, ',')) {
            v.push_back(std::stod(cell));
        }
        CHECK(v[0] == p);
        CHECK(v[2] == doctest::Approx(mu[static_cast<std::size_t>(p)]).epsilon(1e-12));
        CHECK(v[3] == doctest::Approx(mu[static_cast<std::size_t>(p)]).epsilon(1e-12));
    }
    const auto j = run({"moments", "--lambda", "10", "--a", "1", "--x", "1", "--max-p", "3", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out).at("moments").size() == 4);
}

TEST_CASE("scalar subcommands") {
    auto r = run({"kernel", "--lambda", "1", "--a", "1", "--x", "0", "--nu", "0"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "log_kernel,kernel,log_kernel_dx,center,scale");
    CHECK(std::stod(ls[1]) == doctest::Approx(std::log(0.5)).epsilon(1e-13));

    r = run({"voronovskaja", "--lambda", "100", "--a", "1", "--x", "1", "--fn", "e4"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(0.2816).epsilon(1e-5));

    r = run({"simultaneous", "--lambda", "50", "--a", "1", "--x", "1", "--fn", "e2", "--p", "1", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("lhs").get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(j.at("rhs").get<double>() == doctest::Approx(2.0));

    r = run({"tails", "--lambda", "10", "--a", "1", "--x", "1", "--delta", "0"});
    CHECK(r.code == 0);
    CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("converge csv and json") {
    const fs::path cfg = write_config("small.json", kSmallConfig);
    auto r = run({"converge", "--config", cfg.string()});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + 3 * 2 * 4 + 1 + 1 + 3 * 2);
    CHECK(ls[0] == "function,a,lambda,x,op_value,f_value,abs_error");
    CHECK(ls[1].rfind("xsinx,10,10,0.5,", 0) == 0);
    CHECK(ls[25].empty());
    CHECK(ls[26] == "function,a,lambda,sup_error");
    CHECK(ls.back().rfind("xsinx,PW,100,", 0) == 0);
    CHECK(r.out.find('\r') == std::string::npos);

    const fs::path out = scratch_dir() / "small.csv";
    fs::remove(out);
    auto r2 = run({"converge", "--config", cfg.string(), "--out", out.string()});
    CHECK(r2.code == 0);
    CHECK(r2.out.empty());
    CHECK(slurp(out) == r.out);
    CHECK_FALSE(fs::exists(out.string() + ".tmp"));

    auto rj = run({"converge", "--config", cfg.string(), "--format", "json"});
    CHECK(rj.code == 0);
    const auto report = cli::report_from_json(nlohmann::json::parse(rj.out));
    const auto spec = cli::experiment_spec_from_json(nlohmann::json::parse(kSmallConfig));
    CHECK(report == run_convergence_experiment(spec));
    CHECK(cli::to_csv(report) == r.out);
}

TEST_CASE("determinism") {
    const fs::path cfg = write_config("det.json", kSmallConfig);
    const fs::path a = scratch_dir() / "det_a.csv";
    const fs::path b = scratch_dir() / "det_b.csv";
    CHECK(run({"converge", "--config", cfg.string(), "--out", a.string()}).code == 0);
    CHECK(run({"converge", "--config", cfg.string(), "--out", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("usage errors") {
    auto r = run({});
    CHECK(r.code == cli::kExitUsage);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "e2", "--bogus", "3"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--bogus") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--fn") != std::string::npos);
    r = run({"apply", "--lambda", "-1", "--a", "1", "--x", "1", "--fn", "e2"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--lambda") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "zero", "--x", "1", "--fn", "e2"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--a") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "exp"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--theta") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "sinc"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--fn") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "e2", "--p", "4"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--p") != std::string::npos);
    r = run({"apply", "--lambda", "10", "--a", "1", "--x", "1", "--fn", "e2", "--format", "xml"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--format") != std::string::npos);
    r = run({"moments", "--lambda", "10", "--a", "PW", "--x", "1"});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--a") != std::string::npos);
    r = run({"moments", "--lambda", "10", "--a", "1", "--x", "1", "--max-p", "13"});
    CHECK(r.code == cli::kExitUsage);
    r = run({"converge", "--config", (scratch_dir() / "missing.json").string()});
    CHECK(r.code == cli::kExitUsage);
    CHECK(r.err.find("--config") != std::string::npos);
    const fs::path bad = write_config("bad.json", R"({"function": "xsinx", "a_ladder": [], "lambda_ladder": [10],
        "x_grid": {"lo": 0.1, "hi": 1, "count": 3}})");
    r = run({"converge", "--config", bad.string()});
    CHECK(r.code == cli::kExitUsage);
    const fs::path broken = write_config("broken.json", "{not json");
    r = run({"converge", "--config", broken.string()});
    CHECK(r.code == cli::kExitUsage);
    r = run({"apply", "moments"});
    CHECK(r.code == cli::kExitUsage);
}

TEST_CASE("numeric errors") {
    auto r = run({"apply", "--lambda", "2", "--a", "1", "--x", "0", "--fn", "exp", "--theta", "5"});
    CHECK(r.code == cli::kExitNumeric);
    CHECK(r.err.find("GrowthTooFast") != std::string::npos);
    CHECK(r.err.find("lambda=2") != std::string::npos);
    CHECK(r.err.find("a=1") != std::string::npos);
    CHECK(r.err.find("x=0") != std::string::npos);
    r = run({"apply", "--lambda", "2", "--a", "PW", "--x", "-1", "--fn", "e1"});
    CHECK(r.code == cli::kExitNumeric);
    CHECK(r.err.find("DomainError") != std::string::npos);
    r = run({"tails", "--lambda", "2", "--a", "1", "--x", "0", "--delta", "1", "--N", "5"});
    CHECK(r.code == cli::kExitNumeric);
    CHECK(r.err.find("GrowthTooFast") != std::string::npos);
}

TEST_CASE("help") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    for (const char* sub : {"apply", "moments", "kernel", "voronovskaja", "simultaneous", "tails", "converge"}) {
        CHECK(r.out.find(sub) != std::string::npos);
    }
    r = run({"apply", "--help"});
    CHECK(r.code == 0);
    for (const char* flag : {"--lambda", "--a", "--x", "--p", "--theta", "--rel-tol", "--fn", "--format", "--out"}) {
        INFO(flag);
        CHECK(r.out.find(flag) != std::string::npos);
    }
    r = run({"converge", "--help"});
    CHECK(r.out.find("--config") != std::string::npos);
    r = run({"tails", "-h"});
    CHECK(r.out.find("--delta") != std::string::npos);
    CHECK(r.out.find("--N") != std::string::npos);
    r = run({"moments", "--help"});
    CHECK(r.out.find("--max-p") != std::string::npos);
    r = run({"kernel", "--help"});
    CHECK(r.out.find("--nu") != std::string::npos);
}
