#include "bdft/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bdft {

namespace {

const double kSqrtPi = std::sqrt(kPi);

// (1 - cos y) / y^2
double one_minus_cos_over_sq(double y) {
    if (std::abs(y) < 1e-3) {
        const double y2 = y * y;
        return 0.5 - y2 / 24.0 + y2 * y2 / 720.0;
    }
    const double h = std::sin(0.5 * y);
    return 2.0 * h * h / (y * y);
}

BVMultiplier gauss_multiplier(double a, double x) {
    const double a2 = a * a;
    const double sigma = 1.0 / (a * std::sqrt(2.0));
    BVMultiplier m;
    auto g = [=](double s) { return std::polar(std::exp(-a2 * s * s), x * s); };
    m.g = g;
    m.h = [=](double s) { return Complex{-2.0 * a2 * s, x} * g(s); };
    m.dh.density = [=](double s) {
        const Complex u{-2.0 * a2 * s, x};
        return (u * u - 2.0 * a2) * g(s);
    };
    m.d3 = [=](double s) {
        const Complex u{-2.0 * a2 * s, x};
        return u * (u * u - 6.0 * a2) * g(s);
    };
    // |h'| <= (x^2 + 2a^2 + 4a^2|x||s| + 4a^4 s^2) exp(-a^2 s^2)
    m.dh.total_variation = (x * x + 2.0 * a2) * kSqrtPi / a + 4.0 * std::abs(x) + 2.0 * a * kSqrtPi;
    m.dh.tail_mass = [=](double r) {
        return 2.0 * ((x * x + 2.0 * a2) * gaussian_moment_tail(0, sigma, r) +
                      4.0 * a2 * std::abs(x) * gaussian_moment_tail(1, sigma, r) +
                      4.0 * a2 * a2 * gaussian_moment_tail(2, sigma, r));
    };
    m.g_l1 = kSqrtPi / a;
    m.g_sup = 1.0;
    m.g_tail = [=](double r) { return 2.0 * gaussian_moment_tail(0, sigma, r); };
    m.moment2_sup = gaussian_power_sup(2.0, 0.0, sigma, 0.0);

    const double A = kSqrtPi / a;
    const double w = a * std::sqrt(2.0);
    auto full = [=](double t) {
        const double y = t - x;
        return Complex{A * std::exp(-y * y / (4.0 * a2))};
    };
    Weight gw;
    gw.full = full;
    gw.far = {{0.0, full, A * gaussian_power_sup(2.0, x, w, 1.0), A * gaussian_power_sup(0.0, x, w, 1.0)}};
    gw.near_sup = A;
    gw.max_freq = 1.0 / a;
    gw.breakpoints = {x};
    gw.label = "gauss^";
    m.ghat_analytic = gw;
    return m;
}

BVMultiplier poisson_multiplier(double a, double x) {
    BVMultiplier m;
    auto g = [=](double s) { return std::polar(std::exp(-a * std::abs(s)), x * s); };
    auto sg = [](double s) { return s >= 0.0 ? 1.0 : -1.0; };
    m.g = g;
    m.h = [=](double s) { return Complex{-a * sg(s), x} * g(s); };
    m.dh.density = [=](double s) {
        const Complex u{-a * sg(s), x};
        return u * u * g(s);
    };
    m.d3 = [=](double s) {
        const Complex u{-a * sg(s), x};
        return u * u * u * g(s);
    };
    m.dh.density_breaks = {0.0};
    m.dh.jumps = {{0.0, Complex{-2.0 * a}}};
    const double q = x * x + a * a;
    m.dh.total_variation = 2.0 * q / a + 2.0 * a;
    m.dh.tail_mass = [=](double r) { return 2.0 * q * std::exp(-a * r) / a; };
    m.g_l1 = 2.0 / a;
    m.g_sup = 1.0;
    m.g_tail = [=](double r) { return 2.0 * std::exp(-a * r) / a; };
    m.moment2_sup = 4.0 / (a * a * std::exp(2.0));
    m.breakpoints = {0.0};

    auto full = [=](double t) {
        const double y = t - x;
        return Complex{2.0 * a / (y * y + a * a)};
    };
    Weight gw;
    gw.full = full;
    gw.far = {{0.0, full, 2.0 * q / a, 2.0 / a}};
    gw.near_sup = 2.0 / a;
    gw.max_freq = 1.0 / a;
    gw.breakpoints = {x};
    gw.label = "poisson^";
    m.ghat_analytic = gw;
    return m;
}

BVMultiplier fejer_multiplier(double a, double x) {
    const double c = 1.0 / a;
    BVMultiplier m;
    auto g = [=](double s) {
        if (std::abs(s) >= c) return Complex{};
        return std::polar(1.0 - a * std::abs(s), x * s);
    };
    m.g = g;
    m.h = [=](double s) {
        if (s < -c || s >= c) return Complex{};
        const Complex e = std::polar(1.0, x * s);
        return s >= 0.0 ? e * Complex{-a, x * (1.0 - a * s)} : e * Complex{a, x * (1.0 + a * s)};
    };
    m.dh.density = [=](double s) {
        if (std::abs(s) >= c) return Complex{};
        const Complex e = std::polar(1.0, x * s);
        return s >= 0.0 ? e * Complex{-x * x * (1.0 - a * s), -2.0 * a * x}
                        : e * Complex{-x * x * (1.0 + a * s), 2.0 * a * x};
    };
    m.d3 = [=](double s) {
        if (std::abs(s) >= c) return Complex{};
        const Complex e = std::polar(1.0, x * s);
        const double x2 = x * x;
        return s >= 0.0 ? e * Complex{3.0 * a * x2, -x * x2 * (1.0 - a * s)}
                        : e * Complex{-3.0 * a * x2, -x * x2 * (1.0 + a * s)};
    };
    m.dh.density_breaks = {-c, 0.0, c};
    m.dh.jumps = {{-c, a * std::polar(1.0, -x * c)}, {0.0, Complex{-2.0 * a}}, {c, a * std::polar(1.0, x * c)}};
    m.dh.total_variation = x * x / a + 4.0 * std::abs(x) + 4.0 * a;
    m.dh.support_radius = c;
    m.g_l1 = c;
    m.g_sup = 1.0;
    m.g_support = c;
    m.moment2_sup = 4.0 / (27.0 * a * a);
    m.breakpoints = {-c, 0.0, c};

    Weight gw;
    gw.full = [=](double t) { return Complex{2.0 * c * one_minus_cos_over_sq((t - x) * c)}; };
    auto term = [=](double k, Complex phase) {
        return [=](double t) {
            const double y = t - x;
            return k * a * phase / (y * y);
        };
    };
    const double R = 2.0 * (std::abs(x) + 1.0);
    const double y0 = R - std::abs(x);
    // 2a(1 - cos(y/a))/y^2 split into carriers
    gw.far = {{0.0, term(2.0, 1.0), 8.0 * a, 2.0 * a / (y0 * y0)},
              {c, term(-1.0, std::polar(1.0, x * c)), 4.0 * a, a / (y0 * y0)},
              {-c, term(-1.0, std::polar(1.0, -x * c)), 4.0 * a, a / (y0 * y0)}};
    gw.far_radius = R;
    gw.near_sup = c;
    gw.max_freq = c;
    gw.label = "fejer^";
    m.ghat_analytic = gw;
    return m;
}

Weight gauss_conv(double a, double x) {
    const double a2 = a * a;
    const double A = 1.0 / (2.0 * kSqrtPi * a);
    auto full = [=](double t) {
        const double y = x - t;
        return Complex{A * std::exp(-y * y / (4.0 * a2))};
    };
    const double w = a * std::sqrt(2.0);
    Weight k;
    k.full = full;
    k.far = {{0.0, full, A * gaussian_power_sup(2.0, x, w, 1.0), A * gaussian_power_sup(0.0, x, w, 1.0)}};
    k.near_sup = A;
    k.max_freq = 1.0 / a;
    k.breakpoints = {x};
    return k;
}

Weight poisson_conv(double a, double x) {
    auto full = [=](double t) {
        const double y = x - t;
        return Complex{a / (kPi * (y * y + a * a))};
    };
    Weight k;
    k.full = full;
    k.far = {{0.0, full, (x * x + a * a) / (kPi * a), 1.0 / (kPi * a)}};
    k.near_sup = 1.0 / (kPi * a);
    k.max_freq = 1.0 / a;
    k.breakpoints = {x};
    return k;
}

Weight fejer_conv(double a, double x) {
    const double c = 1.0 / a;
    Weight k;
    // 2a sin^2(y/2a) / (pi y^2)
    k.full = [=](double t) { return Complex{c * one_minus_cos_over_sq((x - t) * c) / kPi}; };
    auto term = [=](double coef, Complex phase) {
        return [=](double t) {
            const double y = x - t;
            return coef * phase / (y * y);
        };
    };
    const double R = 2.0 * (std::abs(x) + 1.0);
    const double y0 = R - std::abs(x);
    const double b = a / kPi;
    // (a/pi)(1 - cos(y/a))/y^2 with exp(+-iy/a) = exp(+-ix/a) exp(-+it/a)
    k.far = {{0.0, term(b, 1.0), 4.0 * b, b / (y0 * y0)},
             {c, term(-0.5 * b, std::polar(1.0, x * c)), 2.0 * b, 0.5 * b / (y0 * y0)},
             {-c, term(-0.5 * b, std::polar(1.0, -x * c)), 2.0 * b, 0.5 * b / (y0 * y0)}};
    k.far_radius = R;
    k.near_sup = c / (2.0 * kPi);
    k.max_freq = c;
    return k;
}

SummabilityKernel make_kernel(const std::string& name) {
    SummabilityKernel k;
    k.name = name;
    if (name == "gauss") {
        k.psi_a = [](double a, double t) { return std::exp(-t * t / (4.0 * a * a)) / (2.0 * kSqrtPi * a); };
        k.psihat_a = [](double a, double s) { return std::exp(-a * a * s * s); };
        auto p = [](double t) { return std::exp(-t * t / 4.0) / (2.0 * kSqrtPi); };
        k.derivatives = {p, [p](double t) { return -0.5 * t * p(t); },
                         [p](double t) { return (0.25 * t * t - 0.5) * p(t); }};
        k.satisfies_corollary = true;
    } else if (name == "poisson") {
        k.psi_a = [](double a, double t) { return a / (kPi * (t * t + a * a)); };
        k.psihat_a = [](double a, double s) { return std::exp(-a * std::abs(s)); };
        k.derivatives = {[](double t) { return 1.0 / (kPi * (1.0 + t * t)); },
                         [](double t) {
                             const double q = 1.0 + t * t;
                             return -2.0 * t / (kPi * q * q);
                         },
                         [](double t) {
                             const double q = 1.0 + t * t;
                             return (6.0 * t * t - 2.0) / (kPi * q * q * q);
                         }};
    } else if (name == "fejer") {
        k.psi_a = [](double a, double t) { return one_minus_cos_over_sq(t / a) / (kPi * a); };
        k.psihat_a = [](double a, double s) { return std::max(0.0, 1.0 - a * std::abs(s)); };
        k.derivatives = {[](double t) { return one_minus_cos_over_sq(t) / kPi; },
                         [](double t) {
                             if (std::abs(t) < 0.1) {
                                 const double t2 = t * t;
                                 return t * (-1.0 / 12.0 + t2 / 180.0 - t2 * t2 / 6720.0) / kPi;
                             }
                             return (std::sin(t) / (t * t) - 2.0 * (1.0 - std::cos(t)) / (t * t * t)) / kPi;
                         },
                         [](double t) {
                             if (std::abs(t) < 0.1) {
                                 const double t2 = t * t;
                                 return (-1.0 / 12.0 + t2 / 60.0 - t2 * t2 / 1344.0) / kPi;
                             }
                             const double t2 = t * t;
                             return (std::cos(t) / t2 - 4.0 * std::sin(t) / (t2 * t) +
                                     6.0 * (1.0 - std::cos(t)) / (t2 * t2)) /
                                    kPi;
                         }};
    } else if (name == "dirichlet") {
        auto sinc = [](double t) { return std::abs(t) < 1e-4 ? 1.0 - t * t / 6.0 : std::sin(t) / t; };
        k.psi_a = [sinc](double a, double t) { return sinc(t / a) / (kPi * a); };
        k.psihat_a = [](double a, double s) { return std::abs(s) <= 1.0 / a ? 1.0 : 0.0; };
        k.derivatives = {[sinc](double t) { return sinc(t) / kPi; },
                         [](double t) {
                             if (std::abs(t) < 0.1) return t * (-1.0 / 3.0 + t * t / 30.0) / kPi;
                             return (std::cos(t) / t - std::sin(t) / (t * t)) / kPi;
                         },
                         [](double t) {
                             if (std::abs(t) < 0.1) return (-1.0 / 3.0 + t * t / 10.0) / kPi;
                             const double t2 = t * t;
                             return (-std::sin(t) / t - 2.0 * std::cos(t) / t2 + 2.0 * std::sin(t) / (t2 * t)) / kPi;
                         }};
        k.satisfies_theorem = false;
    } else {
        throw ParameterError("unknown kernel: " + name);
    }
    return k;
}

void check_kernel_args(const SummabilityKernel& K, double a, double x) {
    if (!K.satisfies_theorem) {
        throw ParameterError("the " + K.name +
                             " kernel is not integrable (int |psi| diverges), so inversion by it is not covered");
    }
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("kernel scale a must be positive");
    if (!std::isfinite(x)) throw ParameterError("x must be finite");
}

// Tolerances are snapped to powers of ten so that transform values cached by
// one (a, x) can be reused by another.
double snap(double tol) { return std::pow(10.0, std::floor(std::log10(tol))); }

}  // namespace

BVMultiplier SummabilityKernel::multiplier_of(double a, double x) const {
    check_kernel_args(*this, a, x);
    BVMultiplier m;
    if (name == "gauss") m = gauss_multiplier(a, x);
    else if (name == "poisson") m = poisson_multiplier(a, x);
    else m = fejer_multiplier(a, x);
    m.label = name + ":a=" + std::to_string(a) + ",x=" + std::to_string(x);
    return m;
}

Weight SummabilityKernel::convolution_weight(double a, double x) const {
    check_kernel_args(*this, a, x);
    Weight w = name == "gauss" ? gauss_conv(a, x) : name == "poisson" ? poisson_conv(a, x) : fejer_conv(a, x);
    w.label = name + "_a";
    return w;
}

const SummabilityKernel& summability_kernel(const std::string& name) {
    static const std::map<std::string, SummabilityKernel> table = [] {
        std::map<std::string, SummabilityKernel> t;
        for (const char* n : {"fejer", "poisson", "gauss", "dirichlet"}) t.emplace(n, make_kernel(n));
        return t;
    }();
    auto it = table.find(name);
    if (it == table.end()) throw ParameterError("unknown kernel: " + name);
    return it->second;
}

const std::vector<std::string>& kernel_names() {
    static const std::vector<std::string> names{"fejer", "poisson", "gauss", "dirichlet"};
    return names;
}

QuadResult invert_at(const DistributionalTransform& T, const SummabilityKernel& K, double a, double x,
                     double tol) {
    const BVMultiplier m = K.multiplier_of(a, x);
    return pair(T, m, snap(2.0 * kPi * tol)).scaled(1.0 / (2.0 * kPi));
}

QuadResult invert_at(const BoundedFunction& f, const SummabilityKernel& K, double a, double x, double tol) {
    return invert_at(DistributionalTransform(f), K, a, x, tol);
}

QuadResult invert_direct(const BoundedFunction& f, const SummabilityKernel& K, double a, double x,
                         double tol) {
    return integrate_against(f, K.convolution_weight(a, x), Region::All, tol);
}

SweepTable inversion_sweep(const BoundedFunction& f, const SummabilityKernel& K,
                           const std::vector<double>& a_list, const std::vector<double>& grid, double tol) {
    const DistributionalTransform T(f);
    SweepTable table;
    table.a_list = a_list;
    for (double a : a_list) {
        double worst = 0.0;
        for (double x : grid) {
            SweepRow row;
            row.a = a;
            row.x = x;
            row.value = invert_at(T, K, a, x, tol);
            row.reference = f(x);
            row.error = std::abs(row.value.value - row.reference);
            worst = std::max(worst, row.error);
            table.rows.push_back(row);
        }
        table.max_error.push_back(worst);
    }
    return table;
}

bool nonincreasing_with_jitter(const std::vector<double>& v, double jitter) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1] * (1.0 + jitter)) return false;
    }
    return true;
}

HypothesisReport corollary_hypotheses_check(const SummabilityKernel& K) {
    constexpr int kLevels = 8;
    constexpr double kRatio = 0.75;
    HypothesisReport report;
    report.kernel = K.name;
    for (int k = 0; k < 3; ++k) {
        const RealFn& d = K.derivatives[static_cast<std::size_t>(k)];
        const ComplexFn integrand = [&d](double t) { return Complex{t * t * std::abs(d(t))}; };
        MomentCheck& mc = report.moments[static_cast<std::size_t>(k)];
        mc.order = k;
        double total = integrate_smooth(integrand, -10.0, 10.0, {}, 1e-9, 0.5).value.real();
        double T = 10.0;
        for (int j = 0; j < kLevels; ++j) {
            // |t^2 psi^(k)| is even for every catalog kernel
            double mag = 0.0;
            for (int i = 0; i <= 64; ++i) mag = std::max(mag, integrand(T * (1.0 + i / 64.0)).real());
            const double tol = 1e-8 * mag * T + 1e-16;
            const double D = 2.0 * integrate_smooth(integrand, T, 2.0 * T, {}, tol, 1.0).value.real();
            mc.dyadic.push_back(D);
            total += D;
            T *= 2.0;
        }
        int growing = 0;
        for (int j = kLevels - 3; j < kLevels; ++j) {
            const double prev = mc.dyadic[static_cast<std::size_t>(j - 1)];
            const double cur = mc.dyadic[static_cast<std::size_t>(j)];
            if (cur > 1e-14 && cur >= kRatio * prev) ++growing;
        }
        mc.finite = growing < 3;
        const double last = mc.dyadic.back();
        const double prev = mc.dyadic[kLevels - 2];
        const double r = prev > 0.0 ? last / prev : 0.0;
        mc.value = mc.finite && r < 1.0 ? total + last * r / (1.0 - r) : total;
    }
    return report;
}

}  // namespace bdft
