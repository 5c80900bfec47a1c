#include <doctest.h>

#include <cmath>

#include "bdft/sampling.hpp"
#include "bdft/transform.hpp"
#include "oracles.hpp"

using namespace bdft;

namespace {
const Complex I{0.0, 1.0};
}

TEST_CASE("Psi of the constant function") {
    const BoundedFunction one = catalog("const");
    CHECK(std::abs(psi(one, 0.0).value - 2.0) < 1e-8);
    for (double s : {0.3, 1.0, 4.5, -2.0}) {
        const double as = std::abs(s);
        const double exact = 2.0 * (std::cos(as) - as * (oracle::pi / 2.0 - oracle::Si(as)));
        CHECK(std::abs(psi(one, s, 1e-10).value - exact) < 1e-8);
    }
}

TEST_CASE("Psi of the sign function") {
    const BoundedFunction sgn = catalog("sgn");
    for (double s : {0.4, 1.0, 3.0}) {
        const Complex exact = -2.0 * I * (std::sin(s) - s * oracle::Ci(s));
        CHECK(std::abs(psi(sgn, s, 1e-10).value - exact) < 1e-8);
    }
}

TEST_CASE("Omega, f1^ and Phi of the constant function") {
    const BoundedFunction one = catalog("const");
    for (double s : {0.0, 0.5, 2.0, 6.0}) {
        const double f1 = s == 0.0 ? 2.0 : 2.0 * std::sin(s) / s;
        const double om = 2.0 * (s * oracle::Si(s) - 1.0 + std::cos(s));
        CHECK(std::abs(f1_hat(one, s).value - f1) < 1e-10);
        CHECK(std::abs(omega(one, s).value - om) < 1e-10);
        CHECK(std::abs(phi(one, s).value - (omega(one, s).value - psi(one, s).value)) < 1e-8);
    }
}

TEST_CASE("Omega kernel is continuous through the series switch") {
    for (double s : {0.5, 3.0}) {
        const double t = 1e-3 / s;
        CHECK(std::abs(omega_kernel(s, t * (1 - 1e-9)) - omega_kernel(s, t * (1 + 1e-9))) < 1e-9);
        CHECK(std::abs(omega_kernel(s, 0.0) - Complex{0.5 * s * s}) < 1e-15);
        const double u = 0.4;
        const Complex direct = (1.0 - I * s * u - std::exp(-I * s * u)) / (u * u);
        CHECK(std::abs(omega_kernel(s, u) - direct) < 1e-13);
    }
}

TEST_CASE("Psi bound and decay") {
    const BoundedFunction f = catalog("cos_recip", {1.0});
    for (double s : {-3.0, 0.0, 10.0}) CHECK(std::abs(psi(f, s).value) <= psi_norm_bound(f) + 1e-8);
    CHECK(std::abs(psi(catalog("sgn"), 1e3).value) < 1e-2);
}

TEST_CASE("transform cache returns identical results") {
    const DistributionalTransform T(catalog("atan_over", {1.0}));
    const QuadResult a = T.psi(0.7, 1e-9);
    const std::size_t n = T.cache_size();
    const QuadResult b = T.psi(0.7, 1e-9);
    CHECK(a.value == b.value);
    CHECK(T.cache_size() == n);
    CHECK(std::abs(T.phi(0.7).value - (T.omega(0.7).value - T.psi(0.7).value)) < 1e-8);
}

TEST_CASE("Hoelder ratio stays below its constant") {
    for (double h : {1e-2, -1e-4}) {
        CHECK(holder_ratio(catalog("sgn"), 1.0, h) <= 6.0);
        CHECK(holder_ratio(catalog("const"), -4.0, h) <= 6.0);
    }
    CHECK_THROWS_AS(holder_ratio(catalog("sgn"), 0.0, 0.5), ParameterError);
}

TEST_CASE("second difference of Omega recovers f1^") {
    CHECK(omega_second_derivative_check(catalog("const"), 0.7, 1e-3) < 1e-3);
    CHECK(omega_second_derivative_check(catalog("sgn"), -1.5, 1e-3) < 1e-3);
}

TEST_CASE("round12 keeps twelve digits") {
    CHECK(round12(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-15));
}

namespace {
// int_0^s (u - sin u)/u^2 du, termwise
double sgn_omega_integral(double s) {
    long double sum = 0.0L, term = 1.0L;
    for (int k = 1; k < 60; ++k) {
        term *= static_cast<long double>(s) * s / ((2.0L * k) * (2.0L * k + 1));
        sum += (k % 2 ? 1.0L : -1.0L) * term / (2 * k);
    }
    return static_cast<double>(sum);
}
}  // namespace

TEST_CASE("documented transform examples") {
    const BoundedFunction zero = catalog("const", {0.0});
    CHECK(psi(zero, 1.0).value == Complex{});
    CHECK(omega(zero, 1.0).value == Complex{});
    CHECK(phi(zero, 1.0).value == Complex{});
    CHECK(holder_ratio(zero, 0.0, 1e-3) == 0.0);

    // expwave: Psi(s) = Psi_1(s - x)
    const double x = 0.4, u = oracle::pi / 2.0;
    const double exact = 2.0 * (std::cos(u) - u * (oracle::pi / 2.0 - oracle::Si(u)));
    CHECK(std::abs(psi(catalog("expwave", {x}), x + u, 1e-10).value - exact) < 1e-8);

    const BoundedFunction ind = catalog("indicator", {-1.0, 1.0});
    CHECK(std::abs(psi(ind, 2.3).value) < 1e-12);
    CHECK(std::abs(phi(ind, 2.3).value - omega(ind, 2.3).value) < 1e-12);

    const BoundedFunction sgn = catalog("sgn");
    for (double s : {0.5, oracle::pi, 4.0}) {
        CHECK(std::abs(f1_hat(sgn, s).value - I * (-2.0) * (1.0 - std::cos(s)) / s) < 1e-10);
        CHECK(std::abs(omega(sgn, s).value - (-2.0) * I * s * sgn_omega_integral(s)) < 1e-9);
    }
    CHECK(std::abs(f1_hat(sgn, 0.0).value) < 1e-15);

    CHECK(holder_ratio(catalog("const"), 0.0, 1e-3) > 0.0);
    CHECK(holder_ratio(catalog("const"), 0.0, 1e-3) <= 6.0);
    CHECK(holder_ratio(sharpness_witness(0.0, 1e-3), 0.0, 1e-3) >= 1.0 / oracle::pi - 0.05);
    CHECK(omega_second_derivative_check(catalog("const"), 1.0, 1e-3) <= 1e-4);
    CHECK(omega_second_derivative_check(sgn, 2.0, 1e-3) <= 1e-3);
    CHECK(std::abs(omega_growth_ratio(1e3) - 1.0) <= 0.15);
}

TEST_CASE("witness increment matches its tail integral") {
    const double h = 1e-2;
    const BoundedFunction f = sharpness_witness(0.0, h);
    const Complex d = psi(f, h, 1e-7).value - psi(f, 0.0, 1e-7).value;
    // int_{h/2}^inf |sin u|/u^2 du: Simpson per half period, then the mean-value tail
    const double a = h / 2.0;
    double sum = 0.0;
    auto simpson = [](double lo, double hi, int n) {
        const double step = (hi - lo) / n;
        double acc = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double t = lo + k * step;
            acc += (k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0)) * std::abs(std::sin(t)) / (t * t);
        }
        return acc * step / 3.0;
    };
    sum += simpson(a, 0.05, 20000) + simpson(0.05, oracle::pi, 20000);
    const int N = 20000;
    for (int k = 1; k < N; ++k) sum += simpson(k * oracle::pi, (k + 1) * oracle::pi, 16);
    sum += 2.0 / (oracle::pi * N * oracle::pi);
    CHECK(std::abs(std::abs(d) - 2.0 * h * sum) < 1e-5 * 2.0 * h * sum);
}

TEST_CASE("Omega increments obey the quadratic bound") {
    const BoundedFunction fs[] = {catalog("const"), catalog("sgn"), catalog("cos_recip", {1.0}), catalog("atan_over", {0.5})};
    Halton seq(42);
    for (int i = 0; i < 40; ++i) {
        const auto u = seq.next<2>();
        const double s = -1.0 + 2.0 * u[0], h = -0.5 + u[1];
        const BoundedFunction& f = fs[i % 4];
        const QuadResult a = omega(f, s + h), b = omega(f, s);
        const double bound = f.sup_bound() * (2.0 * std::abs(h) * std::abs(s) + h * h);
        CHECK(std::abs(a.value - b.value) <= bound + 10.0 * (a.err_est + b.err_est));
    }
}
