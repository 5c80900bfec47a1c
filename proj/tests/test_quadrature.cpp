#include <doctest.h>

#include <cmath>

#include "bdft/quadrature.hpp"
#include "oracles.hpp"

using namespace bdft;

TEST_CASE("smooth integrals match closed forms") {
    const QuadResult r = integrate_smooth([](double t) { return Complex{std::exp(-t * t)}; }, -6.0, 6.0);
    CHECK(std::abs(r.value.real() - std::sqrt(oracle::pi) * std::erf(6.0)) < 1e-12);
    const QuadResult k = integrate_smooth([](double t) { return Complex{std::abs(t - 0.3)}; }, -1.0, 1.0, {0.3});
    CHECK(std::abs(k.value.real() - (0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7)) < 1e-13);
}

TEST_CASE("oscillatory moments match direct formulas") {
    for (double kappa : {0.0, 1e-4, 0.7, 25.0}) {
        const auto m = monomial_moments(kappa, 4);
        const double m0 = kappa == 0.0 ? 2.0 : 2.0 * std::sin(kappa) / kappa;
        CHECK(std::abs(m[0] - Complex{m0}) < 1e-13);
        CHECK(std::abs(m[1].real()) < 1e-13);
    }
    // int_0^2 t^2 exp(-3it) dt by antiderivative
    const double s = 3.0, b = 2.0;
    const Complex i{0.0, 1.0};
    auto F = [&](double t) { return std::exp(-i * s * t) * (i * t * t / s + 2.0 * t / (s * s) - 2.0 * i / (s * s * s)); };
    CHECK(std::abs(oscillatory_panel_moment({0.0, 0.0, 1.0}, s, 0.0, b) - (F(b) - F(0.0))) < 1e-13);
}

TEST_CASE("Filon rule handles high frequency") {
    const double nu = 400.0;
    const QuadResult r = integrate_filon([](double t) { return Complex{std::exp(-t)}; }, nu, {0.0, 0.5, 1.0});
    const Complex z{1.0, nu};
    const Complex exact = (1.0 - std::exp(-z)) / z;
    CHECK(std::abs(r.value - exact) < 1e-10);
}

TEST_CASE("oscillatory tails match sine and cosine integrals") {
    for (double s : {0.5, 2.0, 7.0}) {
        const QuadResult r = integrate_oscillatory_tail([](double t) { return Complex{1.0 / (t * t)}; }, s, 1e-10, 2.0, 1.0);
        const double exact = 2.0 * (std::cos(s) - s * (oracle::pi / 2.0 - oracle::Si(s)));
        CHECK(std::abs(r.value.real() - exact) < 1e-8);
        CHECK(std::abs(r.value.imag()) < 1e-8);
    }
}

TEST_CASE("Stieltjes integrals add jumps and density") {
    BVDecomposition dh;
    dh.density = [](double t) { return Complex{std::abs(t) <= 1.0 ? 1.0 : 0.0}; };
    dh.density_breaks = {-1.0, 1.0};
    dh.jumps = {{0.5, Complex{2.0}}};
    dh.total_variation = 4.0;
    dh.support_radius = 2.0;
    const QuadResult r = integrate_stieltjes([](double t) { return Complex{t * t}; }, dh, 1e-12);
    CHECK(std::abs(r.value.real() - (2.0 / 3.0 + 0.5)) < 1e-12);
}

TEST_CASE("Gaussian helpers") {
    const double sigma = 1.7, r = 0.9;
    CHECK(gaussian_moment_tail(0, sigma, r) ==
          doctest::Approx(sigma * std::sqrt(oracle::pi / 2.0) * std::erfc(r / (sigma * std::sqrt(2.0)))));
    CHECK(gaussian_moment_tail(1, sigma, r) == doctest::Approx(sigma * sigma * std::exp(-r * r / (2 * sigma * sigma))));
    // t^2 exp(-t^2/2) peaks at t = sqrt(2)
    CHECK(gaussian_power_sup(2.0, 0.0, 1.0, 0.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(gaussian_power_sup(2.0, 0.0, 1.0, 3.0) == doctest::Approx(9.0 * std::exp(-4.5)));
}

TEST_CASE("aligned breaks are sorted and unique") {
    const auto b = aligned_breaks(3.0, 1.0, {0.5, 1.0});
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(std::adjacent_find(b.begin(), b.end()) == b.end());
    CHECK(std::find(b.begin(), b.end(), 0.5) != b.end());
}

TEST_CASE("budget exhaustion raises") {
    auto wild = [](double t) { return Complex{std::sin(1.0 / (t + 1e-9))}; };
    CHECK_THROWS_AS(integrate_smooth(wild, 0.0, 1.0, {}, 1e-14, kInf, 50), BudgetExceeded);
}

TEST_CASE("documented quadrature examples") {
    CHECK(std::abs(integrate_smooth([](double t) { return Complex{std::sin(t)}; }, 0.0, oracle::pi).value - 2.0) < 1e-10);
    CHECK(std::abs(integrate_smooth([](double t) { return Complex{t}; }, -1.0, 1.0).value) < 1e-15);
    // int_0^1 (t - sin t)/t^2 dt by the termwise series
    double series = 0.0, fact = 1.0;
    for (int k = 1; k < 12; ++k) {
        fact *= (2 * k) * (2 * k + 1);
        series += (k % 2 ? 1.0 : -1.0) / (fact * 2 * k);
    }
    auto w = [](double t) { return Complex{t < 1e-4 ? t / 6.0 : (t - std::sin(t)) / (t * t)}; };
    CHECK(std::abs(integrate_smooth(w, 0.0, 1.0, {}, 1e-13).value - series) < 1e-12);

    CHECK(std::abs(integrate_oscillatory_tail([](double t) { return Complex{1.0 / (t * t)}; }, 0.0, 1e-10, 2.0, 1.0).value - 2.0) < 1e-9);
    auto odd = [](double t) { return Complex{t / (1.0 + t * t * t * t)}; };
    CHECK(std::abs(integrate_oscillatory_tail(odd, 0.0, 1e-10, 3.0, 1.0).value) < 1e-9);

    BVDecomposition jump;
    jump.jumps = {{0.0, Complex{1.0}}};
    jump.total_variation = 1.0;
    jump.support_radius = 1.0;
    CHECK(std::abs(integrate_stieltjes([](double) { return Complex{1.0}; }, jump, 1e-12).value - 1.0) < 1e-15);

    BVDecomposition box;
    box.density = [](double t) { return Complex{t >= 0.0 && t <= 1.0 ? 1.0 : 0.0}; };
    box.density_breaks = {0.0, 1.0};
    box.total_variation = 1.0;
    box.support_radius = 2.0;
    CHECK(std::abs(integrate_stieltjes([](double t) { return Complex{t}; }, box, 1e-12).value - 0.5) < 1e-12);

    BVDecomposition pm;
    pm.jumps = {{-1.0, Complex{1.0}}, {1.0, Complex{-1.0}}};
    pm.total_variation = 2.0;
    pm.support_radius = 1.0;
    CHECK(std::abs(integrate_stieltjes([](double t) { return Complex{std::exp(-t * t)}; }, pm, 1e-12).value) < 1e-15);

    const Complex i{0.0, 1.0};
    const double s = 1.7, a = -0.4, b = 1.1;
    CHECK(std::abs(oscillatory_panel_moment({1.0}, s, a, b) - (std::exp(-i * s * a) - std::exp(-i * s * b)) / (i * s)) < 1e-14);
    CHECK(std::abs(oscillatory_panel_moment({0.0, 0.0, 3.0}, 0.0, a, b) - Complex{b * b * b - a * a * a}) < 1e-14);
    // int_0^{2 pi} t exp(-it) dt = 2 pi i
    CHECK(std::abs(oscillatory_panel_moment({0.0, 1.0}, 1.0, 0.0, 2.0 * oracle::pi) - 2.0 * oracle::pi * i) < 1e-12);
}
