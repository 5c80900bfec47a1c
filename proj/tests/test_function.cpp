#include <doctest.h>

#include <cmath>

#include "bdft/function.hpp"

using namespace bdft;

TEST_CASE("catalog entries evaluate pointwise") {
    CHECK(catalog("const", {2.5})(-7.0).real() == 2.5);
    CHECK(catalog("sgn")(-2.0).real() == -1.0);
    CHECK(catalog("sgn")(0.0).real() == 0.0);
    CHECK(catalog("indicator", {-1.0, 2.0})(1.5).real() == 1.0);
    CHECK(catalog("indicator", {-1.0, 2.0})(2.5).real() == 0.0);
    CHECK(catalog("cos_recip", {2.0})(0.5).real() == doctest::Approx(std::cos(4.0)));
    CHECK(catalog("cos_recip_pow", {3.0, 1.0})(0.7).real() == doctest::Approx(std::pow(std::cos(1.0 / 0.7), 3)));
    CHECK(std::abs(catalog("expwave", {1.5})(2.0) - std::polar(1.0, 3.0)) < 1e-15);
    CHECK(catalog("atan_over", {2.0})(1.0).real() == doctest::Approx(std::atan(0.5)));
    CHECK(catalog("gaussian", {2.0, 1.0})(3.0).real() == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("reciprocal modes reproduce the function near the origin") {
    for (const auto& [name, params] : std::vector<std::pair<std::string, std::vector<double>>>{
             {"cos_recip", {1.3}}, {"cos_recip_pow", {4.0, 0.7}}, {"exp_i_recip", {-2.0}}, {"x_sin_recip", {1.0}}}) {
        const BoundedFunction f = catalog(name, params);
        REQUIRE(f.has_reciprocal_modes());
        for (double t : {-0.9, -0.31, 0.05, 0.6}) {
            Complex sum{};
            for (const auto& m : f.reciprocal_modes()) sum += m.amplitude(t) * std::polar(1.0, m.freq / t);
            CHECK(std::abs(sum - f(t)) < 1e-13);
        }
    }
}

TEST_CASE("far-field carriers reproduce expwave") {
    const BoundedFunction f = catalog("expwave", {-0.75});
    for (double t : {-30.0, 4.0, 1e3}) {
        Complex sum{};
        for (const auto& c : f.far_field()) sum += std::polar(1.0, c.freq * t) * c.envelope(t);
        CHECK(std::abs(sum - f(t)) < 1e-12);
    }
}

TEST_CASE("spec parsing accepts keys and positions") {
    const FunctionSpec a = parse_spec("gaussian:center=2,sigma=0.5");
    CHECK(a.name == "gaussian");
    CHECK(a.params == std::vector<double>{0.5, 2.0});
    CHECK(parse_spec("cos_recip:3").params == std::vector<double>{3.0});
    CHECK(parse_spec("sgn").params.empty());
    CHECK(parse_function("const:1")(5.0).real() == 1.0);
    CHECK_THROWS_AS(parse_function("nosuch"), ParameterError);
    CHECK_THROWS_AS(parse_function("cos_recip:b=1"), ParameterError);
    CHECK_THROWS_AS(parse_function("cos_recip:1,2"), ParameterError);
    CHECK_THROWS_AS(parse_function("cos_recip:a=x"), ParameterError);
    CHECK_THROWS_AS(parse_function("cos_recip:a=0"), ParameterError);
    CHECK_THROWS_AS(parse_function("indicator:lo=2,hi=1"), ParameterError);
    CHECK_THROWS_AS(parse_function("cos_recip_pow:m=2.5"), ParameterError);
}

TEST_CASE("sup bounds hold on a grid") {
    for (const auto& name : catalog_names()) {
        if (name == "custom") continue;
        const BoundedFunction f = catalog(name);
        CHECK(grid_sup(f, -20.0, 20.0, 4001) <= f.sup_bound() * (1.0 + 1e-12));
    }
}

TEST_CASE("split separates near and far parts") {
    const BoundedFunction f = catalog("atan_over", {1.0});
    const SplitPair p = split(f);
    for (double t : {-3.0, -0.5, 0.2, 1.0, 4.0}) CHECK(std::abs(p.f1(t) + p.f2(t) - f(t)) < 1e-15);
    CHECK(p.f1(2.0) == Complex{});
    CHECK(p.f2(0.5) == Complex{});
}

TEST_CASE("sharpness witness is unimodular") {
    const BoundedFunction f = sharpness_witness(0.3, 1e-2);
    for (double t : {-700.0, -1.0, 0.25, 628.3185307179586, 1234.5}) CHECK(std::abs(f(t)) == doctest::Approx(1.0));
}

TEST_CASE("scale and add combine values and bounds") {
    const BoundedFunction f = add(scale(catalog("sgn"), Complex{0.0, 2.0}), catalog("const", {1.0}));
    CHECK(std::abs(f(-1.0) - Complex{1.0, -2.0}) < 1e-15);
    CHECK(f.sup_bound() >= std::sqrt(5.0) - 1e-12);
}

TEST_CASE("custom functions need a handle") {
    CHECK_THROWS_AS(make_custom(nullptr, 1.0, {}), ParameterError);
    const BoundedFunction f = make_custom([](double t) { return Complex{std::sin(t)}; }, 1.0, {});
    CHECK(f(1.0).real() == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("documented catalog examples") {
    CHECK(catalog("sgn")(3.0).real() == 1.0);
    CHECK(catalog("sgn").sup_bound() == 1.0);
    CHECK(catalog("cos_recip", {2.0})(2.0 / 3.141592653589793).real() == doctest::Approx(-1.0));
    const BoundedFunction xs = catalog("x_sin_recip", {1.0});
    CHECK(xs.sup_bound() == 1.0);
    CHECK(grid_sup(xs, -50.0, 50.0, 200001) <= 1.0);

    const SplitPair ind = split(catalog("indicator", {-1.0, 1.0}));
    for (double t : {-3.0, -1.5, 1.01, 7.0}) CHECK(ind.f2(t) == Complex{});
    const SplitPair one = split(catalog("const"));
    CHECK(one.f1(0.3).real() == 1.0);
    CHECK(one.f1(1.5).real() == 0.0);
    const SplitPair sg = split(catalog("sgn"));
    CHECK(sg.f2(-2.0).real() == -1.0);
    CHECK(sg.f2(0.5).real() == 0.0);
}
