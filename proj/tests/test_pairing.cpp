#include <doctest.h>

#include <cmath>

#include "bdft/pairing.hpp"
#include "oracles.hpp"

using namespace bdft;

TEST_CASE("multiplier catalog values") {
    const BVMultiplier g = multiplier_catalog("gaussian", {2.0, 1.0});
    CHECK(g.g(3.0).real() == doctest::Approx(std::exp(-0.5)));
    CHECK(g.g_l1 == doctest::Approx(2.0 * std::sqrt(2.0 * oracle::pi)));
    // width is the full support length
    const BVMultiplier t = multiplier_catalog("triangle", {4.0});
    CHECK(t.g(1.0).real() == doctest::Approx(0.5));
    CHECK(t.g(2.5).real() == 0.0);
    CHECK_THROWS_AS(parse_multiplier("gaussian:sigma=-1"), ParameterError);
    CHECK_THROWS_AS(parse_multiplier("nosuch"), ParameterError);
}

TEST_CASE("transforms of multipliers") {
    const BVMultiplier g = multiplier_catalog("gaussian");
    for (double s : {0.0, 0.5, 2.0}) {
        CHECK(std::abs(ghat(g, s).value - std::sqrt(2.0 * oracle::pi) * std::exp(-0.5 * s * s)) < 1e-8);
    }
    const double c = 1.5;
    const BVMultiplier t = multiplier_catalog("triangle", {2.0 * c});
    for (double s : {0.3, 1.0, 2.0 * oracle::pi}) {
        const double x = c * s / 2.0;
        const double sinc = std::sin(x) / x;
        CHECK(std::abs(ghat(t, s).value - c * sinc * sinc) < 1e-8);
    }
}

TEST_CASE("pairing with a plane wave gives a point evaluation") {
    const BVMultiplier g = multiplier_catalog("gaussian", {1.0, 0.5});
    for (double x : {-1.0, 0.0, 2.0}) {
        const Complex expected = 2.0 * oracle::pi * g.g(x);
        CHECK(std::abs(pair(catalog("expwave", {x}), g).value - expected) < 1e-7);
    }
}

TEST_CASE("pairing is linear in f") {
    const BVMultiplier g = multiplier_catalog("triangle", {3.0});
    const BoundedFunction a = catalog("sgn"), b = catalog("cos_recip", {1.0});
    const Complex lhs = pair(add(scale(a, 2.0), b), g).value;
    const Complex rhs = 2.0 * pair(a, g).value + pair(b, g).value;
    CHECK(std::abs(lhs - rhs) < 1e-7);
}

TEST_CASE("exchange formula on small cases") {
    struct Case {
        const char* f;
        const char* m;
    };
    for (const Case c : {Case{"const:1", "gaussian"}, Case{"sgn", "odd_gaussian"}, Case{"expwave:0.5", "triangle:2"},
                         Case{"indicator:-0.5,2", "gaussian:1,0.5"}}) {
        const ExchangeReport r = exchange_report(parse_function(c.f), parse_multiplier(c.m));
        CHECK(r.residual < 1e-6 * (1.0 + std::abs(r.rhs.value)));
        CHECK(std::abs(r.lhs.value) <= r.bound + 10.0 * r.lhs.err_est);
    }
}

TEST_CASE("constant against a Gaussian") {
    // <2 pi delta, g> for f = 1
    const QuadResult r = pair(catalog("const"), multiplier_catalog("gaussian", {1.3}));
    CHECK(std::abs(r.value - 2.0 * oracle::pi) < 1e-7);
}

TEST_CASE("pairing bound formula") {
    const BVMultiplier g = multiplier_catalog("gaussian");
    const BoundedFunction f = catalog("const", {3.0});
    CHECK(pairing_bound(f, g) == doctest::Approx(2.0 * 3.0 * (g.g_l1 + g.dh.total_variation)));
}

TEST_CASE("effective radius covers the requested mass") {
    const BVMultiplier g = multiplier_catalog("gaussian");
    const double r = g.effective_radius(1.0, 1e-10);
    CHECK(2.0 * gaussian_moment_tail(0, 1.0, r) <= 1e-10);
}

TEST_CASE("documented multiplier examples") {
    const BVMultiplier t = multiplier_catalog("triangle", {2.0});
    REQUIRE(t.dh.jumps.size() == 3);
    CHECK(t.dh.jumps[0].at == -1.0);
    CHECK(t.dh.jumps[1].at == 0.0);
    CHECK(t.dh.jumps[2].at == 1.0);
    CHECK(t.dh.total_variation == doctest::Approx(4.0));
    CHECK(t.h(-0.5).real() == 1.0);
    CHECK(t.h(0.5).real() == -1.0);
    CHECK(multiplier_catalog("gaussian").g_l1 == doctest::Approx(std::sqrt(2.0 * oracle::pi)));

    const BVMultiplier f = multiplier_catalog("fejer", {0.5, 0.0});
    bool plus = false, minus = false;
    for (const auto& j : f.dh.jumps) {
        plus = plus || j.at == doctest::Approx(2.0);
        minus = minus || j.at == doctest::Approx(-2.0);
    }
    CHECK((plus && minus));

    BVMultiplier linear;
    linear.g = [](double s) { return Complex{s}; };
    linear.h = [](double) { return Complex{1.0}; };
    CHECK_THROWS_AS(validate(linear), ParameterError);
}

TEST_CASE("documented pairing examples") {
    const BVMultiplier g = multiplier_catalog("gaussian");
    const DistributionalTransform ind(catalog("indicator", {-1.0, 1.0}));
    CHECK(std::abs(pair_f2(ind, g).value) < 1e-12);
    // int_{|t|>1} g^ = 2 pi erfc(1/sqrt 2)
    const DistributionalTransform one(catalog("const"));
    CHECK(std::abs(pair_f2(one, g).value - 2.0 * oracle::pi * std::erfc(1.0 / std::sqrt(2.0))) < 1e-8);

    CHECK(std::abs(pair(catalog("expwave", {0.0}), g).value - 2.0 * oracle::pi) < 1e-8);
    CHECK(std::abs(pair(catalog("const", {0.0}), g).value) < 1e-15);
    CHECK(std::abs(pair(catalog("sgn"), g).value) < 1e-8);
    const ExchangeReport c = exchange_report(catalog("cos_recip", {1.0}), g);
    CHECK(c.residual < 1e-5);
    CHECK(std::abs(c.lhs.value) <= c.bound);

    for (double s : {0.5, 2.0, 10.0}) {
        CHECK(std::abs(ghat(g, s).value - g.ghat_analytic->full(s)) < 1e-8);
    }
    const BVMultiplier shifted = multiplier_catalog("gaussian", {1.0, 0.7});
    CHECK(std::abs(ghat(shifted, 1.3).value - std::conj(ghat(shifted, -1.3).value)) < 1e-9);
    const BVMultiplier t = multiplier_catalog("triangle", {2.0});
    CHECK(std::abs(ghat(t, 2.0 * oracle::pi).value) < 1e-9);
    CHECK(std::abs(ghat(t, 1.0).value - (2.0 - 2.0 * std::cos(1.0))) < 1e-9);

    CHECK(pairing_bound(catalog("const"), t) == doctest::Approx(2.0 * (1.0 + 4.0)));
    CHECK(pairing_bound(catalog("const", {0.0}), t) == 0.0);
    const ExchangeReport s = exchange_report(catalog("sgn"), g);
    CHECK(std::abs(s.lhs.value) <= s.bound);
}

TEST_CASE("Stieltjes sign agrees with the smooth-multiplier path") {
    // <f2^, g> = -int Psi_f g'' for g(s) = exp(-s^2/2)
    const BVMultiplier g = multiplier_catalog("gaussian");
    for (const char* spec : {"const:1", "sgn", "cos_recip:1"}) {
        const DistributionalTransform T(parse_function(spec));
        auto integrand = [&](double s) { return -T.psi(s, 1e-11).value * (s * s - 1.0) * std::exp(-0.5 * s * s); };
        std::vector<double> breaks;
        for (int k = -11; k <= 11; ++k) breaks.push_back(k);
        const QuadResult smooth = integrate_smooth(integrand, -12.0, 12.0, breaks, 1e-9);
        CHECK(std::abs(pair_f2(T, g).value - smooth.value) < 1e-7);
    }
}
