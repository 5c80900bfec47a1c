#include "bdft/transform.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bdft {

namespace {

// x - sin x without cancellation for |x| < 1.
double x_minus_sin(double x) {
    const double x2 = x * x;
    double term = x * x2 / 6.0, sum = 0.0;
    for (int k = 1; k < 12; ++k) {
        sum += term;
        term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum;
}

}  // namespace

Complex omega_kernel(double s, double t) {
    if (t == 0.0) return Complex{0.5 * s * s, 0.0};
    const double x = s * t;
    if (std::abs(x) < 1e-3) {
        // -sum_{k>=2} (-is)^k t^{k-2} / k!, through order 8
        const Complex z{0.0, -s};
        Complex pw = z * z, sum{};
        double fact = 2.0, tp = 1.0;
        for (int k = 2; k <= 8; ++k) {
            sum -= pw * tp / fact;
            pw *= z;
            tp *= t;
            fact *= (k + 1);
        }
        return sum;
    }
    const double sh = std::sin(0.5 * x);
    const double re = 2.0 * sh * sh;
    const double im = std::abs(x) < 1.0 ? x_minus_sin(x) : x - std::sin(x);
    return Complex{re, -im} / (t * t);
}

Weight psi_weight(double s) {
    Weight w;
    w.full = [s](double t) { return std::polar(1.0 / (t * t), -s * t); };
    w.far = {{s, [](double t) { return Complex{1.0 / (t * t)}; }, 1.0, 1.0}};
    w.far_radius = 1.0;
    w.max_freq = std::abs(s);
    w.label = "psi";
    return w;
}

Weight f1_weight(double s) {
    Weight w;
    w.full = [s](double t) { return std::polar(1.0, -s * t); };
    w.far = {{s, [](double) { return Complex{1.0}; }, kInf, 1.0}};
    w.far_radius = 0.0;
    w.near_sup = 1.0;
    w.max_freq = std::abs(s);
    w.label = "f1";
    return w;
}

Weight omega_weight(double s) {
    Weight w;
    w.full = [s](double t) { return omega_kernel(s, t); };
    w.near_sup = 0.5 * s * s;
    w.max_freq = std::abs(s);
    w.label = "omega";
    return w;
}

QuadResult psi(const BoundedFunction& f, double s, double tol) {
    return integrate_against(f, psi_weight(s), Region::Outer, tol);
}

QuadResult f1_hat(const BoundedFunction& f, double s, double tol) {
    return integrate_against(f, f1_weight(s), Region::Near, tol);
}

QuadResult omega(const BoundedFunction& f, double s, double tol) {
    return integrate_against(f, omega_weight(s), Region::Near, tol);
}

QuadResult phi(const BoundedFunction& f, double s, double tol) {
    return omega(f, s, 0.5 * tol) - psi(f, s, 0.5 * tol);
}

double round12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

DistributionalTransform::DistributionalTransform(BoundedFunction f)
    : f_(std::move(f)), cache_(std::make_shared<Cache>()) {}

template <class Fn>
QuadResult DistributionalTransform::lookup(Table Cache::*table, double s, double tol,
                                           Fn&& compute) const {
    const Key key{round12(s), tol};
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        const auto& t = (*cache_).*table;
        auto it = t.find(key);
        if (it != t.end()) return it->second;
    }
    QuadResult r = compute(key.first);
    std::lock_guard<std::mutex> lock(cache_->mu);
    return ((*cache_).*table).emplace(key, r).first->second;
}

QuadResult DistributionalTransform::psi(double s, double tol) const {
    return lookup(&Cache::psi, s, tol, [&](double x) { return bdft::psi(f_, x, tol); });
}

QuadResult DistributionalTransform::f1_hat(double s, double tol) const {
    return lookup(&Cache::f1, s, tol, [&](double x) { return bdft::f1_hat(f_, x, tol); });
}

QuadResult DistributionalTransform::omega(double s, double tol) const {
    return lookup(&Cache::omega, s, tol, [&](double x) { return bdft::omega(f_, x, tol); });
}

QuadResult DistributionalTransform::phi(double s, double tol) const {
    return omega(s, 0.5 * tol) - psi(s, 0.5 * tol);
}

std::size_t DistributionalTransform::cache_size() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    return cache_->psi.size() + cache_->f1.size() + cache_->omega.size();
}

double holder_ratio(const BoundedFunction& f, double s, double h, double rel_tol) {
    if (!(h != 0.0 && std::abs(h) < std::exp(-1.0))) {
        throw ParameterError("holder_ratio needs 0 < |h| < 1/e");
    }
    if (f.sup_bound() == 0.0) return 0.0;
    const double norm = f.sup_bound() * std::abs(h) * std::abs(std::log(std::abs(h)));
    const double tol = rel_tol * norm;
    const Complex d = psi(f, s + h, tol).value - psi(f, s, tol).value;
    return std::abs(d) / norm;
}

double omega_second_derivative_check(const BoundedFunction& f, double s, double delta, double tol) {
    if (!(delta >= 1e-5 && delta <= 1e-2)) throw ParameterError("delta must lie in [1e-5, 1e-2]");
    const Complex op = omega(f, s + delta, tol).value;
    const Complex o0 = omega(f, s, tol).value;
    const Complex om = omega(f, s - delta, tol).value;
    const Complex second = (op - 2.0 * o0 + om) / (delta * delta);
    return std::abs(second - f1_hat(f, s, tol).value);
}

double omega_growth_ratio(double s) {
    if (!(s >= 10.0)) throw ParameterError("omega_growth_ratio needs s >= 10");
    const double scale = 2.0 * s * std::log(s);
    return std::abs(omega(catalog("sgn"), s, 1e-7 * scale).value) / scale;
}

}  // namespace bdft
