#include "bdft/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bdft {

namespace {

constexpr double kSeriesLimit = 12.0;
constexpr double kMaxArgument = 1e4;

void check_argument(double x) {
    if (!(std::abs(x) <= kMaxArgument)) throw ParameterError("Bessel argument outside |x| <= 1e4");
}

// J1(z)/z, with the limit 1/2 at z = 0.
double j1_over(double z) { return z < 1e-8 ? 0.5 : bessel_j1(z) / z; }

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// 2 pi sqrt|b| J1(2 sqrt|bs|) / sqrt|s| where bs < 0, else 0.
double recip_branch(double b, double s) {
    if (b * s >= 0.0) return 0.0;
    return 4.0 * kPi * std::abs(b) * j1_over(2.0 * std::sqrt(std::abs(b * s)));
}

std::vector<double> resolve_params(const std::string& name, const std::vector<double>& params) {
    const auto& spec = catalog_parameters(name);
    if (params.size() > spec.size()) throw ParameterError("too many parameters for " + name);
    std::vector<double> p;
    for (std::size_t i = 0; i < spec.size(); ++i) p.push_back(i < params.size() ? params[i] : spec[i].default_value);
    return p;
}

double nonzero(double a, const std::string& name) {
    if (a == 0.0 || !std::isfinite(a)) throw ParameterError(name + " needs a finite nonzero a");
    return a;
}

// Closed form of exp(i b / t) summed with coefficients c_b.
AtomicPlusDensity reciprocal_sum(const std::vector<std::pair<double, double>>& terms) {
    AtomicPlusDensity D;
    double atom = 0.0, left = 0.0, right = 0.0, bound = 0.0;
    for (const auto& [b, c] : terms) {
        atom += c;
        if (b > 0.0) left += c * 2.0 * kPi * b;
        if (b < 0.0) right += c * 2.0 * kPi * -b;
        bound += c * 2.0 * kPi * std::abs(b);
    }
    D.atoms = {{0.0, Complex{2.0 * kPi * atom}}};
    D.density = [terms](double s) {
        double v = 0.0;
        for (const auto& [b, c] : terms) {
            if (b != 0.0) v -= c * recip_branch(b, s);
        }
        return Complex{v};
    };
    const SingularityKind kind = left == right ? SingularityKind::Removable : SingularityKind::Jump;
    D.singularities = {{0.0, kind, Complex{-left}, Complex{-right}}};
    D.density_bound = bound;
    D.decay_hint = 0.75;
    return D;
}

}  // namespace

double bessel_series(int n, double x) {
    if (n != 0 && n != 1) throw ParameterError("only J0 and J1 are provided");
    check_argument(x);
    const long double h = 0.5L * static_cast<long double>(x);
    const long double h2 = h * h;
    long double term = n == 0 ? 1.0L : h;
    long double sum = term;
    for (int k = 1; k < 120; ++k) {
        term *= -h2 / (static_cast<long double>(k) * static_cast<long double>(k + n));
        sum += term;
        if (std::fabs(term) < 1e-22L * (1.0L + std::fabs(sum))) break;
    }
    return static_cast<double>(sum);
}

double bessel_asymptotic(int n, double x) {
    if (n != 0 && n != 1) throw ParameterError("only J0 and J1 are provided");
    check_argument(x);
    if (x == 0.0) throw ParameterError("asymptotic branch needs x != 0");
    const double ax = std::abs(x);
    const double mu = 4.0 * n * n;
    double P = 1.0, Q = 0.0, a = 1.0, last = kInf;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k * ax);
        if (std::abs(a) >= last) break;
        last = std::abs(a);
        // a_k / x^k enters P (k even) or Q (k odd) with sign (-1)^floor(k/2)
        const double sgn = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) P += sgn * a; else Q += sgn * a;
    }
    const double chi = ax - (2.0 * n + 1.0) * kPi / 4.0;
    const double v = std::sqrt(2.0 / (kPi * ax)) * (P * std::cos(chi) - Q * std::sin(chi));
    return (n == 1 && x < 0.0) ? -v : v;
}

double bessel_error_estimate(int n, double x) {
    if (n != 0 && n != 1) throw ParameterError("only J0 and J1 are provided");
    check_argument(x);
    const double ax = std::abs(x);
    // sum of |terms| is I_n(x) <= exp(x)
    if (ax <= kSeriesLimit) return 4.0 * std::numeric_limits<double>::epsilon() + 1e-19 * std::exp(ax);
    const double mu = 4.0 * n * n;
    double a = 1.0, last = kInf;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        a *= (mu - odd * odd) / (8.0 * k * ax);
        if (std::abs(a) >= last) break;
        last = std::abs(a);
    }
    return std::sqrt(2.0 / (kPi * ax)) * last + 4.0 * std::numeric_limits<double>::epsilon();
}

double bessel_j0(double x) {
    check_argument(x);
    return std::abs(x) <= kSeriesLimit ? bessel_series(0, x) : bessel_asymptotic(0, x);
}

double bessel_j1(double x) {
    check_argument(x);
    return std::abs(x) <= kSeriesLimit ? bessel_series(1, x) : bessel_asymptotic(1, x);
}

const char* to_string(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::Removable: return "removable";
        case SingularityKind::PrincipalValue: return "principal_value";
        case SingularityKind::Jump: return "jump";
        case SingularityKind::NonIntegrable: return "non_integrable";
    }
    return "unknown";
}

const std::vector<std::string>& closed_form_names() {
    static const std::vector<std::string> names{"expwave",     "cos_recip",   "cos_recip_pow", "exp_i_recip",
                                                "x_sin_recip", "atan_over", "atan_recip"};
    return names;
}

AtomicPlusDensity closed_form(const std::string& name, const std::vector<double>& params) {
    if (std::find(closed_form_names().begin(), closed_form_names().end(), name) == closed_form_names().end()) {
        throw ParameterError("no closed form for: " + name);
    }
    const std::vector<double> p = resolve_params(name, params);
    AtomicPlusDensity D;
    if (name == "expwave") {
        D.atoms = {{p[0], Complex{2.0 * kPi}}};
    } else if (name == "cos_recip") {
        const double a = nonzero(p[0], name);
        D = reciprocal_sum({{a, 0.5}, {-a, 0.5}});
    } else if (name == "cos_recip_pow") {
        const double mr = p[0];
        const int m = static_cast<int>(std::lround(mr));
        if (mr != m || m < 1 || m > 8) throw ParameterError("cos_recip_pow needs an integer m in 1..8");
        const double a = nonzero(p[1], name);
        std::vector<std::pair<double, double>> terms;
        double binom = 1.0;
        for (int j = 0; j <= m; ++j) {
            terms.emplace_back((m - 2 * j) * a, binom / std::ldexp(1.0, m));
            binom = binom * (m - j) / (j + 1);
        }
        D = reciprocal_sum(terms);
    } else if (name == "exp_i_recip") {
        D = reciprocal_sum({{nonzero(p[0], name), 1.0}});
    } else if (name == "x_sin_recip") {
        const double a = nonzero(p[0], name);
        D.atoms = {{0.0, Complex{2.0 * kPi * a}}};
        D.density = [a](double s) {
            const double as = std::abs(s);
            const double z = 2.0 * std::sqrt(std::abs(a) * as);
            return Complex{kPi * a * bessel_j0(z) / as -
                           1.5 * kPi * std::sqrt(std::abs(a)) * sign(a) * bessel_j1(z) / (as * std::sqrt(as))};
        };
        D.singularities = {{0.0, SingularityKind::NonIntegrable, {}, {}}};
        D.density_bound = kPi * std::abs(a) + 1.5 * kPi * std::sqrt(std::abs(a));
        D.decay_hint = 1.0;
        D.diagnostic = true;
    } else if (name == "atan_over") {
        const double a = nonzero(p[0], name);
        D.density = [a](double s) { return Complex{0.0, -kPi * sign(a) * std::exp(-std::abs(a * s)) / s}; };
        D.singularities = {{0.0, SingularityKind::PrincipalValue, {}, {}}};
        D.density_bound = kPi;
        D.decay_hint = 1.0;
    } else {
        const double a = nonzero(p[0], name);
        D.density = [a](double s) {
            return Complex{0.0, kPi * sign(a * s) * std::expm1(-std::abs(a * s)) / std::abs(s)};
        };
        D.singularities = {{0.0, SingularityKind::Jump, Complex{0.0, kPi * a}, Complex{0.0, -kPi * a}}};
        D.density_bound = kPi;
        D.decay_hint = 1.0;
    }
    D.label = name;
    return D;
}

QuadResult pair_closed_form(const AtomicPlusDensity& D, const BVMultiplier& m, double tol, double excision) {
    validate(m);
    QuadResult r;
    for (const auto& atom : D.atoms) r.value += atom.weight * m.g(atom.at);
    if (!D.density) return r;
    double eps = 0.0;
    for (const auto& sing : D.singularities) {
        if (sing.at != 0.0) throw ParameterError("singularities are supported only at the origin");
        if (sing.kind == SingularityKind::NonIntegrable) {
            if (!(excision > 0.0)) throw ParameterError(D.label + " density is not integrable at 0; pass an excision");
            eps = excision;
        }
    }
    const double R = std::max(1.0, m.effective_radius(D.density_bound, 0.25 * tol));
    std::vector<double> extra;
    for (double b : m.breakpoints) extra.push_back(std::abs(b));
    std::vector<double> breaks;
    for (double b : aligned_breaks(R, 1.0, extra)) {
        if (b > eps) breaks.push_back(b);
    }
    const ComplexFn& d = D.density;
    const ComplexFn& g = m.g;
    // s and -s together: odd 1/s parts cancel before they are summed
    QuadResult part = integrate_smooth([&](double s) { return d(s) * g(s) + d(-s) * g(-s); }, eps, R, breaks,
                                       0.5 * tol);
    if (!std::isfinite(m.g_support)) part.err_est += D.density_bound * m.g_tail(R);
    r += part;
    return r;
}

ClosedFormReport closed_form_report(const std::string& name, const std::vector<double>& params,
                                    const BVMultiplier& m, double tol, double excision) {
    ClosedFormReport rep;
    const AtomicPlusDensity D = closed_form(name, params);
    rep.diagnostic = D.diagnostic;
    rep.closed = pair_closed_form(D, m, tol, excision);
    rep.exchange = exchange_rhs(catalog(name, params), m, tol);
    rep.residual = std::abs(rep.closed.value - rep.exchange.value);
    return rep;
}

double closed_form_residual(const std::string& name, const std::vector<double>& params, const BVMultiplier& m,
                            double tol) {
    return closed_form_report(name, params, m, tol).residual;
}

SumRule cos_recip_sum_rule(double a, double tol) {
    nonzero(a, "cos_recip");
    SumRule out;
    const BoundedFunction f = catalog("cos_recip", {a});
    QuadResult near = f1_hat(f, 0.0, 0.5 * tol);
    near.value -= 2.0;
    // |cos(a/t) - 1| <= a^2 / (2 t^2)
    const QuadResult outer = integrate_oscillatory_tail([a](double t) { return Complex{std::cos(a / t) - 1.0}; },
                                                        0.0, 0.5 * tol, 2.0, 0.5 * a * a);
    out.integral = near + outer;
    out.density_limit = closed_form("cos_recip", {a}).singularities.front().left_limit;
    out.residual = std::abs(out.integral.value - out.density_limit);
    return out;
}

}  // namespace bdft
