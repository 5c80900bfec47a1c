#include <doctest.h>

#include <cmath>

#include "bdft/special.hpp"
#include "oracles.hpp"

using namespace bdft;

TEST_CASE("Bessel functions against the integral representation") {
    for (double x : {0.0, 0.1, 1.0, 2.5, 7.0, 11.9, 12.1, 20.0, 55.5, 300.0, 4000.0}) {
        CHECK(std::abs(bessel_j0(x) - oracle::bessel(0, x)) < 1e-10);
        CHECK(std::abs(bessel_j1(x) - oracle::bessel(1, x)) < 1e-10);
        CHECK(std::abs(bessel_j0(x) - oracle::bessel(0, x)) <= 10.0 * bessel_error_estimate(0, x) + 1e-14);
    }
}

TEST_CASE("Bessel symmetry, special values and domain") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(bessel_j1(0.0) == 0.0);
    CHECK(bessel_j0(-3.0) == bessel_j0(3.0));
    CHECK(bessel_j1(-3.0) == -bessel_j1(3.0));
    CHECK(bessel_j1(2.0) == doctest::Approx(0.576724807756873).epsilon(1e-14));
    CHECK_THROWS_AS(bessel_j0(2e4), ParameterError);
    CHECK_THROWS_AS(bessel_series(2, 1.0), ParameterError);
    for (double x = 10.0; x <= 12.0; x += 0.25) CHECK(std::abs(bessel_series(1, x) - bessel_asymptotic(1, x)) < 1e-8);
}

TEST_CASE("closed forms carry the expected structure") {
    const AtomicPlusDensity w = closed_form("expwave", {0.5});
    REQUIRE(w.atoms.size() == 1);
    CHECK(w.atoms[0].at == 0.5);
    CHECK(std::abs(w.atoms[0].weight - 2.0 * oracle::pi) < 1e-15);

    const AtomicPlusDensity c = closed_form("cos_recip", {1.0});
    CHECK(c.singularities.at(0).kind == SingularityKind::Removable);
    CHECK(std::abs(c.atoms.at(0).weight - 2.0 * oracle::pi) < 1e-15);
    // density -pi J1(2 sqrt|s|)/sqrt|s| on both sides
    for (double s : {-3.0, 0.5, 2.0}) {
        const double z = 2.0 * std::sqrt(std::abs(s));
        CHECK(std::abs(c.density(s) - Complex{-oracle::pi * oracle::bessel(1, z) / std::sqrt(std::abs(s))}) < 1e-10);
    }
    CHECK(closed_form("exp_i_recip", {1.0}).singularities.at(0).kind == SingularityKind::Jump);
    CHECK(closed_form("atan_over", {1.0}).singularities.at(0).kind == SingularityKind::PrincipalValue);
    CHECK(closed_form("atan_recip", {1.0}).singularities.at(0).kind == SingularityKind::Jump);
    CHECK(closed_form("x_sin_recip", {1.0}).diagnostic);
    CHECK(std::string(to_string(SingularityKind::NonIntegrable)) == "non_integrable");
    CHECK_THROWS_AS(closed_form("sgn"), ParameterError);
}

TEST_CASE("closed forms agree with the exchange route") {
    const BVMultiplier g = multiplier_catalog("gaussian", {1.0, 0.5});
    CHECK(closed_form_residual("cos_recip", {1.0}, g) < 1e-6);
    CHECK(closed_form_residual("exp_i_recip", {-1.0}, g) < 1e-6);
    CHECK(closed_form_residual("atan_over", {2.0}, g) < 1e-6);
    CHECK(closed_form_residual("cos_recip_pow", {3.0, 1.0}, g) < 1e-6);
}

TEST_CASE("non-integrable densities need an excision") {
    const BVMultiplier g = multiplier_catalog("gaussian");
    CHECK_THROWS_AS(pair_closed_form(closed_form("x_sin_recip", {1.0}), g), ParameterError);
    const ClosedFormReport r = closed_form_report("x_sin_recip", {1.0}, g, 1e-8, 1e-2);
    CHECK(r.diagnostic);
    CHECK(std::isfinite(r.closed.value.real()));
}

TEST_CASE("cos(a/t) sum rule") {
    for (double a : {0.5, 1.0, 2.0}) {
        const SumRule r = cos_recip_sum_rule(a);
        CHECK(std::abs(r.density_limit.real() + oracle::pi * a) < 1e-12);
        CHECK(r.residual < 1e-6);
    }
}

TEST_CASE("J1(2) from a forty-term series and J0' = -J1") {
    double sum = 0.0, fact_k = 1.0;
    for (int k = 0; k < 40; ++k) {
        if (k > 0) fact_k *= k;
        sum += (k % 2 ? -1.0 : 1.0) / (fact_k * fact_k * (k + 1));
    }
    CHECK(std::abs(bessel_j1(2.0) - sum) < 1e-14);
    for (double x : {0.5, 3.0, 8.0}) {
        const double h = 1e-5;
        CHECK(std::abs((bessel_j0(x + h) - bessel_j0(x - h)) / (2 * h) + bessel_j1(x)) < 1e-6);
    }
}

TEST_CASE("documented closed-form examples") {
    const AtomicPlusDensity c = closed_form("cos_recip", {1.0});
    CHECK(c.singularities.at(0).left_limit.real() == doctest::Approx(-oracle::pi));
    CHECK(std::abs(c.density(1e-10) + oracle::pi) < 1e-8);
    const AtomicPlusDensity ar = closed_form("atan_recip", {1.0});
    CHECK(std::abs(ar.density(1e-9) - Complex{0.0, -oracle::pi}) < 1e-7);

    const AtomicPlusDensity p1 = closed_form("cos_recip_pow", {1.0, 1.3});
    const AtomicPlusDensity c1 = closed_form("cos_recip", {1.3});
    CHECK(std::abs(p1.atoms.at(0).weight - c1.atoms.at(0).weight) < 1e-15);
    for (double s : {-2.0, 0.4, 3.0}) CHECK(std::abs(p1.density(s) - c1.density(s)) < 1e-14);

    const BVMultiplier g = multiplier_catalog("gaussian");
    CHECK(std::abs(pair_closed_form(closed_form("expwave", {0.0}), g).value - 2.0 * oracle::pi) < 1e-14);
    CHECK(closed_form_residual("atan_over", {1.0}, multiplier_catalog("odd_gaussian", {1.0 / std::sqrt(2.0)})) < 1e-5);
    CHECK(closed_form_residual("cos_recip", {1.0}, g) < 1e-5);
}
