#include "bdft/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "bdft/inversion.hpp"

namespace bdft {

namespace {

struct MultParam {
    std::string key;
    double value;
};

const std::map<std::string, std::vector<MultParam>>& mult_table() {
    static const std::map<std::string, std::vector<MultParam>> table = {
        {"gaussian", {{"sigma", 1.0}, {"center", 0.0}}},
        {"odd_gaussian", {{"sigma", 1.0}}},
        {"triangle", {{"width", 2.0}}},
        {"fejer", {{"a", 0.5}, {"x", 0.0}}},
        {"poisson", {{"a", 0.5}, {"x", 0.0}}},
        {"gauss", {{"a", 0.5}, {"x", 0.0}}},
    };
    return table;
}

std::string mult_label(const std::string& name, const std::vector<MultParam>& spec,
                       const std::vector<double>& p) {
    std::ostringstream os;
    os << name;
    for (std::size_t i = 0; i < spec.size(); ++i) os << (i ? "," : ":") << spec[i].key << "=" << p[i];
    return os.str();
}

BVMultiplier make_gaussian(double sigma, double c) {
    if (!(sigma > 0.0)) throw ParameterError("gaussian multiplier needs sigma > 0");
    const double s2 = sigma * sigma, s4 = s2 * s2, s6 = s4 * s2;
    BVMultiplier m;
    m.g = [=](double s) {
        const double y = s - c;
        return Complex{std::exp(-y * y / (2.0 * s2))};
    };
    m.h = [=](double s) {
        const double y = s - c;
        return Complex{-y / s2 * std::exp(-y * y / (2.0 * s2))};
    };
    m.dh.density = [=](double s) {
        const double y = s - c;
        return Complex{(y * y / s4 - 1.0 / s2) * std::exp(-y * y / (2.0 * s2))};
    };
    m.d3 = [=](double s) {
        const double y = s - c;
        return Complex{(-y * y * y / s6 + 3.0 * y / s4) * std::exp(-y * y / (2.0 * s2))};
    };
    m.dh.total_variation = 4.0 * std::exp(-0.5) / sigma;
    m.dh.tail_mass = [=](double r) {
        const double rr = std::max(0.0, r - std::abs(c));
        return 2.0 * (gaussian_moment_tail(2, sigma, rr) / s4 + gaussian_moment_tail(0, sigma, rr) / s2);
    };
    m.g_l1 = sigma * std::sqrt(2.0 * kPi);
    m.g_sup = 1.0;
    m.g_tail = [=](double r) { return 2.0 * gaussian_moment_tail(0, sigma, std::max(0.0, r - std::abs(c))); };
    m.moment2_sup = gaussian_power_sup(2.0, c, sigma, 0.0);
    m.real_valued = true;

    const double A = sigma * std::sqrt(2.0 * kPi);
    Weight w;
    w.full = [=](double t) { return std::polar(A * std::exp(-0.5 * s2 * t * t), -c * t); };
    w.far = {{c, [=](double t) { return Complex{A * std::exp(-0.5 * s2 * t * t)}; },
              A * gaussian_power_sup(2.0, 0.0, 1.0 / sigma, 1.0), A * std::exp(-0.5 * s2)}};
    w.far_radius = 1.0;
    w.near_sup = A;
    w.max_freq = std::abs(c) + sigma;
    w.label = "gaussian^";
    m.ghat_analytic = w;
    m.gaussian_shape = std::make_pair(sigma, c);
    return m;
}

BVMultiplier make_odd_gaussian(double sigma) {
    if (!(sigma > 0.0)) throw ParameterError("odd_gaussian multiplier needs sigma > 0");
    const double s2 = sigma * sigma, s4 = s2 * s2, s6 = s4 * s2;
    auto e = [=](double s) { return std::exp(-s * s / (2.0 * s2)); };
    BVMultiplier m;
    m.g = [=](double s) { return Complex{s * e(s)}; };
    m.h = [=](double s) { return Complex{(1.0 - s * s / s2) * e(s)}; };
    m.dh.density = [=](double s) { return Complex{(s * s * s / s4 - 3.0 * s / s2) * e(s)}; };
    m.d3 = [=](double s) {
        const double q = s * s;
        return Complex{(-q * q / s6 + 6.0 * q / s4 - 3.0 / s2) * e(s)};
    };
    m.dh.total_variation = 2.0 + 8.0 * std::exp(-1.5);
    m.dh.tail_mass = [=](double r) {
        return 2.0 * (gaussian_moment_tail(3, sigma, r) / s4 + 3.0 * gaussian_moment_tail(1, sigma, r) / s2);
    };
    m.g_l1 = 2.0 * s2;
    m.g_sup = sigma * std::exp(-0.5);
    m.g_tail = [=](double r) { return 2.0 * gaussian_moment_tail(1, sigma, r); };
    m.moment2_sup = gaussian_power_sup(3.0, 0.0, sigma, 0.0);
    m.real_valued = true;

    const double A = sigma * s2 * std::sqrt(2.0 * kPi);
    auto amp = [=](double t) { return Complex{0.0, -A * t * std::exp(-0.5 * s2 * t * t)}; };
    Weight w;
    w.full = amp;
    w.far = {{0.0, amp, A * gaussian_power_sup(3.0, 0.0, 1.0 / sigma, 1.0),
              A * gaussian_power_sup(1.0, 0.0, 1.0 / sigma, 1.0)}};
    w.far_radius = 1.0;
    w.near_sup = A * gaussian_power_sup(1.0, 0.0, 1.0 / sigma, 0.0);
    w.max_freq = sigma;
    w.label = "odd_gaussian^";
    m.ghat_analytic = w;
    return m;
}

BVMultiplier make_triangle(double width) {
    if (!(width > 0.0)) throw ParameterError("triangle multiplier needs width > 0");
    const double c = 0.5 * width;
    BVMultiplier m;
    m.g = [c](double s) { return Complex{std::max(0.0, 1.0 - std::abs(s) / c)}; };
    m.h = [c](double s) {
        if (s >= -c && s < 0.0) return Complex{1.0 / c};
        if (s >= 0.0 && s < c) return Complex{-1.0 / c};
        return Complex{};
    };
    m.dh.jumps = {{-c, 1.0 / c}, {0.0, -2.0 / c}, {c, 1.0 / c}};
    m.dh.total_variation = 4.0 / c;
    m.dh.support_radius = c;
    m.g_l1 = c;
    m.g_sup = 1.0;
    m.g_support = c;
    m.moment2_sup = 4.0 * c * c / 27.0;
    m.breakpoints = {-c, 0.0, c};
    m.real_valued = true;

    Weight w;
    w.full = [c](double t) {
        const double x = 0.5 * c * t;
        const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return Complex{c * sinc * sinc};
    };
    auto inv2 = [c](double k) { return [c, k](double t) { return Complex{k / (c * t * t)}; }; };
    w.far = {{0.0, inv2(2.0), 2.0 / c, 2.0 / c}, {c, inv2(-1.0), 1.0 / c, 1.0 / c},
             {-c, inv2(-1.0), 1.0 / c, 1.0 / c}};
    w.far_radius = 1.0;
    w.near_sup = c;
    w.max_freq = c;
    w.label = "triangle^";
    m.ghat_analytic = w;
    return m;
}

Weight add_weights(const Weight& a, const Weight& b) {
    Weight r;
    const ComplexFn fa = a.full, fb = b.full;
    r.full = [fa, fb](double t) { return fa(t) + fb(t); };
    r.far = a.far;
    r.far.insert(r.far.end(), b.far.begin(), b.far.end());
    r.far_radius = std::max(a.far_radius, b.far_radius);
    r.near_sup = a.near_sup + b.near_sup;
    r.max_freq = std::max(a.max_freq, b.max_freq);
    r.breakpoints = a.breakpoints;
    r.breakpoints.insert(r.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    r.label = a.label + "+" + b.label;
    return r;
}

// Inner tolerances snap to powers of ten so cached transform values are shared
// between multipliers with similar norms.
double snap(double tol) { return std::pow(10.0, std::floor(std::log10(tol))); }

}  // namespace

double BVMultiplier::effective_radius(double F_bound, double share) const {
    if (std::isfinite(g_support)) return g_support;
    if (!g_tail) throw ParameterError("multiplier with unbounded support needs a tail bound");
    if (F_bound == 0.0) return 1.0;
    double hi = 1.0;
    while (F_bound * g_tail(hi) > share) {
        hi *= 2.0;
        if (hi > 1e9) throw ParameterError("multiplier decays too slowly for the requested tolerance");
    }
    double lo = hi / 2.0;
    while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (F_bound * g_tail(mid) > share) lo = mid; else hi = mid;
    }
    return hi;
}

BVMultiplier multiplier_catalog(const std::string& name, const std::vector<double>& params) {
    const auto& table = mult_table();
    auto it = table.find(name);
    if (it == table.end()) throw ParameterError("unknown multiplier name: " + name);
    const auto& spec = it->second;
    if (params.size() > spec.size()) throw ParameterError("too many parameters for " + name);
    std::vector<double> p;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        p.push_back(i < params.size() ? params[i] : spec[i].value);
        if (!std::isfinite(p.back())) throw ParameterError("non-finite parameter for " + name);
    }
    BVMultiplier m;
    if (name == "gaussian") m = make_gaussian(p[0], p[1]);
    else if (name == "odd_gaussian") m = make_odd_gaussian(p[0]);
    else if (name == "triangle") m = make_triangle(p[0]);
    else m = summability_kernel(name).multiplier_of(p[0], p[1]);
    m.label = mult_label(name, spec, p);
    return m;
}

const std::vector<std::string>& multiplier_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : mult_table()) v.push_back(k);
        return v;
    }();
    return names;
}

BVMultiplier parse_multiplier(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    auto it = mult_table().find(name);
    if (it == mult_table().end()) throw ParameterError("unknown multiplier name: " + name);
    const auto& spec = it->second;
    std::vector<double> params;
    for (const auto& s : spec) params.push_back(s.value);
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        std::size_t positional = 0;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            std::size_t idx = positional++;
            std::string value = item;
            if (eq != std::string::npos) {
                const std::string key = item.substr(0, eq);
                value = item.substr(eq + 1);
                auto pos = std::find_if(spec.begin(), spec.end(),
                                        [&](const MultParam& p) { return p.key == key; });
                if (pos == spec.end()) throw ParameterError("unknown parameter '" + key + "' for " + name);
                idx = static_cast<std::size_t>(pos - spec.begin());
            }
            if (idx >= spec.size()) throw ParameterError("too many parameters for " + name);
            try {
                std::size_t used = 0;
                params[idx] = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ParameterError("bad numeric value '" + value + "' in " + text);
            }
        }
    }
    return multiplier_catalog(name, params);
}

BVMultiplier add(const BVMultiplier& a, const BVMultiplier& b) {
    BVMultiplier r;
    r.label = a.label + "+" + b.label;
    const ComplexFn ga = a.g, gb = b.g, ha = a.h, hb = b.h;
    r.g = [ga, gb](double s) { return ga(s) + gb(s); };
    r.h = [ha, hb](double s) { return ha(s) + hb(s); };
    const ComplexFn da = a.dh.density, db = b.dh.density;
    if (da || db) {
        r.dh.density = [da, db](double s) {
            return (da ? da(s) : Complex{}) + (db ? db(s) : Complex{});
        };
    }
    r.dh.density_breaks = a.dh.density_breaks;
    r.dh.density_breaks.insert(r.dh.density_breaks.end(), b.dh.density_breaks.begin(),
                               b.dh.density_breaks.end());
    std::map<double, Complex> jumps;
    for (const auto& j : a.dh.jumps) jumps[j.at] += j.size;
    for (const auto& j : b.dh.jumps) jumps[j.at] += j.size;
    for (const auto& [at, size] : jumps) r.dh.jumps.push_back({at, size});
    r.dh.total_variation = a.dh.total_variation + b.dh.total_variation;
    r.dh.support_radius = std::max(a.dh.support_radius, b.dh.support_radius);
    if (!std::isfinite(r.dh.support_radius)) {
        auto part = [](const BVDecomposition& d) -> RealFn {
            if (d.tail_mass) return d.tail_mass;
            const double R = d.support_radius;
            const double tv = d.total_variation;
            return [R, tv](double x) { return x >= R ? 0.0 : tv; };
        };
        const RealFn ta = part(a.dh), tb = part(b.dh);
        r.dh.tail_mass = [ta, tb](double x) { return ta(x) + tb(x); };
    }
    if (a.d3 && b.d3) {
        const ComplexFn xa = a.d3, xb = b.d3;
        r.d3 = [xa, xb](double s) { return xa(s) + xb(s); };
    }
    r.g_l1 = a.g_l1 + b.g_l1;
    r.g_sup = a.g_sup + b.g_sup;
    r.g_support = std::max(a.g_support, b.g_support);
    if (!std::isfinite(r.g_support)) {
        auto part = [](const BVMultiplier& m) -> RealFn {
            if (m.g_tail) return m.g_tail;
            const double R = m.g_support, l1 = m.g_l1;
            return [R, l1](double x) { return x >= R ? 0.0 : l1; };
        };
        const RealFn ta = part(a), tb = part(b);
        r.g_tail = [ta, tb](double x) { return ta(x) + tb(x); };
    }
    r.moment2_sup = a.moment2_sup + b.moment2_sup;
    r.breakpoints = a.breakpoints;
    r.breakpoints.insert(r.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    if (a.ghat_analytic && b.ghat_analytic) r.ghat_analytic = add_weights(*a.ghat_analytic, *b.ghat_analytic);
    r.real_valued = a.real_valued && b.real_valued;
    return r;
}

void validate(const BVMultiplier& m) {
    if (!m.g || !m.h) throw ParameterError("multiplier needs g and h = g'");
    if (!(m.dh.total_variation > 0.0) || !std::isfinite(m.dh.total_variation)) {
        throw ParameterError("multiplier must have g' of positive finite variation (a constant g' makes g non-integrable)");
    }
    if (!(m.g_l1 > 0.0) || !std::isfinite(m.g_l1)) throw ParameterError("multiplier must be integrable");
    if (!m.dh.density && m.dh.jumps.empty()) throw ParameterError("multiplier dh carries no mass");
}

QuadResult pair_f1(const DistributionalTransform& T, const BVMultiplier& m, double tol) {
    validate(m);
    const double sup = T.transform_norm();
    if (sup == 0.0) return {};
    const double R = m.effective_radius(2.0 * sup, 0.125 * tol);
    const double tin = snap(0.25 * tol / std::max(1.0, m.g_l1));
    const auto breaks = aligned_breaks(R, 1.0, m.breakpoints);
    const ComplexFn& g = m.g;
    QuadResult r = integrate_smooth([&](double s) { return T.f1_hat(s, tin).value * g(s); }, -R, R,
                                    breaks, 0.5 * tol);
    r.err_est += tin * m.g_l1;
    if (!std::isfinite(m.g_support)) r.err_est += 2.0 * sup * m.g_tail(R);
    return r;
}

QuadResult pair_f2(const DistributionalTransform& T, const BVMultiplier& m, double tol) {
    validate(m);
    const double sup = T.transform_norm();
    if (sup == 0.0) return {};
    const double tin = snap(0.25 * tol / std::max(1.0, m.dh.total_variation));
    StieltjesOptions opts;
    opts.F_bound = 2.0 * sup;
    opts.breakpoints = T.source().spectral_points();
    opts.max_panel = 1.0;
    QuadResult r = integrate_stieltjes([&](double s) { return T.psi(s, tin).value; }, m.dh, 0.5 * tol, opts);
    r.value = -r.value;
    r.err_est += tin * m.dh.total_variation;
    return r;
}

QuadResult pair(const DistributionalTransform& T, const BVMultiplier& m, double tol) {
    return pair_f1(T, m, 0.5 * tol) + pair_f2(T, m, 0.5 * tol);
}

QuadResult pair(const BoundedFunction& f, const BVMultiplier& m, double tol) {
    return pair(DistributionalTransform(f), m, tol);
}

QuadResult ghat(const BVMultiplier& m, double s, double tol) {
    validate(m);
    if (std::abs(s) < 1e-3) {
        const double R = m.effective_radius(1.0, 0.25 * tol);
        const ComplexFn& g = m.g;
        QuadResult r = integrate_smooth([&](double x) { return g(x) * std::polar(1.0, -s * x); }, -R, R,
                                        aligned_breaks(R, 1.0, m.breakpoints), 0.5 * tol);
        if (!std::isfinite(m.g_support)) r.err_est += m.g_tail(R);
        return r;
    }
    StieltjesOptions opts;
    opts.F_bound = 1.0;
    opts.max_panel = std::min(1.0, kPi / std::abs(s));
    opts.breakpoints = m.breakpoints;
    QuadResult r = integrate_stieltjes([s](double x) { return std::polar(1.0, -s * x); }, m.dh,
                                       tol * s * s, opts);
    return r.scaled(-1.0 / (s * s));
}

Weight ghat_weight(const BVMultiplier& m, double tol) {
    if (m.ghat_analytic) return *m.ghat_analytic;
    validate(m);
    Weight w;
    const double tin = 0.01 * tol;
    w.full = [m, tin](double t) { return ghat(m, t, tin).value; };
    w.far_radius = 1.0;
    double maxloc = 0.0;
    for (const auto& j : m.dh.jumps) {
        const Complex size = j.size;
        w.far.push_back({j.at, [size](double t) { return -size / (t * t); }, std::abs(size), std::abs(size)});
        maxloc = std::max(maxloc, std::abs(j.at));
    }
    if (m.dh.density) {
        const BVDecomposition dens{m.dh.density, m.dh.density_breaks, {}, m.dh.total_variation,
                                   m.dh.support_radius, m.dh.tail_mass};
        auto amp = [dens, tin, bp = m.breakpoints](double t) {
            StieltjesOptions opts;
            opts.F_bound = 1.0;
            opts.max_panel = std::min(1.0, kPi / std::abs(t));
            opts.breakpoints = bp;
            return -integrate_stieltjes([t](double x) { return std::polar(1.0, -t * x); }, dens, tin, opts).value /
                   (t * t);
        };
        w.far.push_back({0.0, amp, m.dh.total_variation, m.dh.total_variation});
    }
    w.near_sup = m.g_l1;
    w.max_freq = std::max(1.0, maxloc);
    w.label = m.label + "^";
    return w;
}

QuadResult exchange_rhs(const BoundedFunction& f, const BVMultiplier& m, double tol) {
    validate(m);
    return integrate_against(f, ghat_weight(m, tol), Region::All, tol);
}

ExchangeReport exchange_report(const BoundedFunction& f, const BVMultiplier& m, double tol) {
    ExchangeReport r;
    r.lhs = pair(f, m, tol);
    r.rhs = exchange_rhs(f, m, tol);
    r.residual = std::abs(r.lhs.value - r.rhs.value);
    r.bound = pairing_bound(f, m);
    return r;
}

double exchange_residual(const BoundedFunction& f, const BVMultiplier& m, double tol) {
    return exchange_report(f, m, tol).residual;
}

double pairing_bound(const BoundedFunction& f, const BVMultiplier& m) {
    return 2.0 * f.sup_bound() * (m.g_l1 + m.dh.total_variation);
}

}  // namespace bdft
