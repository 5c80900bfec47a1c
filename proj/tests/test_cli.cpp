#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bdft/cli.hpp"
#include "bdft/config.hpp"
#include "bdft/types.hpp"

using namespace bdft;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("transform emits the CSV schema") {
    const Run r = run({"transform", "--f", "const:1", "--grid", "0:10:11"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 12);
    CHECK(ls[0] == "s,re_psi,im_psi,re_omega,im_omega,re_phi,im_phi,re_f1hat,im_f1hat,err_est");
    double psi0 = 0.0;
    std::sscanf(ls[1].c_str(), "0,%lf", &psi0);
    CHECK(psi0 == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args{"transform", "--f", "cos_recip:a=2", "--grid", "-3:3:7", "--out", "json"};
    const Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.size() == 7);
    CHECK(j[0].contains("err_est"));
}

TEST_CASE("bessel subcommand") {
    const Run r = run({"bessel", "--x", "0"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "x,j0,j1,err_est");
    CHECK(ls[1].rfind("0,1,0,", 0) == 0);
}

TEST_CASE("pair, verify and convolve emit JSON") {
    const Run p = run({"pair", "--f", "sgn", "--g", "odd_gaussian", "--both-sides"});
    REQUIRE(p.code == 0);
    const auto jp = nlohmann::json::parse(p.out);
    CHECK(jp["residual"].get<double>() < 1e-6);
    CHECK(jp.contains("bound"));
    CHECK(jp.contains("err_est"));

    const Run v = run({"verify", "--closed-form", "cos_recip:a=1", "--g", "gaussian:1,0.5"});
    REQUIRE(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["residual"].get<double>() < 1e-6);

    const Run c = run({"convolve", "--f", "sgn", "--g", "gaussian", "--h", "gaussian", "--identity", "2"});
    REQUIRE(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["residual"].get<double>() < 1e-6);
}

TEST_CASE("invert reports per-a maxima") {
    const Run r = run({"invert", "--f", "atan_over:a=1", "--kernel", "gauss", "--a", "0.4,0.2", "--grid", "-1:1:3"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + 6 + 1 + 1 + 2);
    CHECK(ls[8] == "a,max_error,err_est");
}

TEST_CASE("argument errors exit 2 with a JSON record") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {},
             {"nosuch"},
             {"transform", "--f", "const:1"},
             {"transform", "--f", "nosuch", "--grid", "0:1:2"},
             {"transform", "--f", "const", "--grid", "0:1"},
             {"invert", "--f", "sgn", "--kernel", "dirichlet", "--grid", "0:1:2"},
             {"suite", "--only", "nosuch"},
             {"--tol", "1e-3", "bessel", "--x", "1"},
             {"verify", "--closed-form", "x_sin_recip:a=1", "--g", "gaussian"}}) {
        const Run r = run(args);
        CHECK(r.code == 2);
        CHECK(nlohmann::json::parse(r.err).contains("error"));
    }
}

TEST_CASE("suite runs selected criteria") {
    const Run r = run({"suite", "--only", "bessel,sum_rule"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0].rfind("PASS", 0) == 0);
}

TEST_CASE("config files") {
    const std::string path = "bdft_test_config.txt";
    {
        std::ofstream f(path);
        f << "# comment\ntol = 1e-9\nseed=7\noutput_format=json  # trailing\n";
    }
    const RunConfig c = load_config(path);
    CHECK(c.tol == 1e-9);
    CHECK(c.seed == 7);
    CHECK(c.output_format == "json");
    {
        std::ofstream f(path);
        f << "colour=blue\n";
    }
    CHECK_THROWS_AS(load_config(path), ParameterError);
    {
        std::ofstream f(path);
        f << "panel_budget=10\n";
    }
    CHECK_THROWS_AS(load_config(path), ParameterError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("/nonexistent/bdft.cfg"), ParameterError);
    RunConfig bad;
    bad.tol = 1e-3;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}
