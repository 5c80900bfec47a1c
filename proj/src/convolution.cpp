#include "bdft/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace bdft {

namespace {

class Memo {
public:
    explicit Memo(ComplexFn fn) : fn_(std::move(fn)) {}
    Complex operator()(double x) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = values_.find(x);
            if (it != values_.end()) return it->second;
        }
        const Complex v = fn_(x);
        std::lock_guard<std::mutex> lock(mu_);
        values_.emplace(x, v);
        return v;
    }

private:
    ComplexFn fn_;
    std::mutex mu_;
    std::unordered_map<double, Complex> values_;
};

ComplexFn memoize(ComplexFn fn) {
    auto memo = std::make_shared<Memo>(std::move(fn));
    return [memo](double x) { return (*memo)(x); };
}

// Radius outside which g carries at most `share` of its mass.
double mass_radius(const BVMultiplier& g, double share) { return g.effective_radius(1.0, share); }

class HermiteTable {
public:
    HermiteTable(double x0, double step, std::vector<Complex> v, std::vector<Complex> d)
        : x0_(x0), step_(step), v_(std::move(v)), d_(std::move(d)) {}

    Complex operator()(double x) const {
        const double u = (x - x0_) / step_;
        if (u < 0.0 || u > static_cast<double>(v_.size() - 1)) return {};
        std::size_t i = static_cast<std::size_t>(u);
        if (i >= v_.size() - 1) i = v_.size() - 2;
        const double t = u - static_cast<double>(i);
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0, h10 = t3 - 2.0 * t2 + t;
        const double h01 = -2.0 * t3 + 3.0 * t2, h11 = t3 - t2;
        return h00 * v_[i] + h10 * step_ * d_[i] + h01 * v_[i + 1] + h11 * step_ * d_[i + 1];
    }

private:
    double x0_, step_;
    std::vector<Complex> v_, d_;
};

double trapezoid_abs(const std::vector<Complex>& v, double step) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
        s += w * std::abs(v[i]);
    }
    return s * step;
}

void require_gaussian(const BVMultiplier& m, const char* role) {
    if (!m.gaussian_shape) {
        throw ParameterError(std::string("identity 1 needs a Gaussian ") + role +
                             " (smooth, with p2 g, g', g'' integrable)");
    }
}

}  // namespace

Weight shifted_weight(const BVMultiplier& g, double x) {
    Weight w;
    const ComplexFn gf = g.g;
    auto full = [gf, x](double t) { return gf(x - t); };
    w.full = full;
    w.far_radius = std::max(1.0, 2.0 * std::abs(x));
    // |t| >= 2|x| gives t^2 <= 4 (x - t)^2
    w.far = {{0.0, full, 4.0 * g.moment2_sup, g.g_sup}};
    w.near_sup = g.g_sup;
    w.max_freq = 2.0;
    for (double b : g.breakpoints) w.breakpoints.push_back(x - b);
    w.label = "shift(" + g.label + ")";
    return w;
}

QuadResult convolve(const BoundedFunction& f, const BVMultiplier& g, double x, double tol) {
    validate(g);
    return integrate_against(f, shifted_weight(g, x), Region::All, tol);
}

BoundedFunction convolve_function(const BoundedFunction& f, const BVMultiplier& g, double inner_tol) {
    validate(g);
    const double sup = f.sup_bound() * g.g_l1;
    const double rg = mass_radius(g, 1e-14);
    const double R = f.far_radius() + rg;
    const ComplexFn gf = g.g;
    const std::vector<double> gbreaks = aligned_breaks(rg, 1.0, g.breakpoints);

    std::vector<CarrierTerm> far;
    std::vector<std::pair<double, ComplexFn>> envelopes;
    for (const auto& c : f.far_field()) {
        const double w = c.freq;
        const ComplexFn env = c.envelope;
        ComplexFn E = memoize([=](double x) {
            return integrate_smooth([&](double t) { return env(x - t) * std::polar(1.0, -w * t) * gf(t); }, -rg,
                                    rg, gbreaks, inner_tol)
                .value;
        });
        far.push_back({w, E, c.bound * g.g_l1});
        envelopes.emplace_back(w, E);
    }
    const BoundedFunction src = f;
    const BVMultiplier gm = g;
    ComplexFn eval = memoize([=](double x) {
        if (std::abs(x) >= R) {
            Complex s{};
            for (const auto& [w, E] : envelopes) s += std::polar(1.0, w * x) * E(x);
            return s;
        }
        return convolve(src, gm, x, inner_tol).value;
    });
    BoundedFunction r(eval, sup, {}, f.label() + "*" + g.label);
    r = r.with_far_field(std::move(far), R);
    if (f.decay_hint()) r = r.with_decay_hint(*f.decay_hint());
    return r;
}

ConvolvedMultiplier convolve_multipliers(const BVMultiplier& g, const BVMultiplier& h, double node_spacing) {
    validate(g);
    validate(h);
    if (!h.dh.jumps.empty() || !h.dh.density || !h.d3) {
        throw ParameterError("h must be smooth with h, h', h'' integrable and h''' available");
    }
    if (!(node_spacing > 0.0 && node_spacing <= 0.1)) throw ParameterError("node spacing must lie in (0, 0.1]");
    const double rg = mass_radius(g, 1e-14);
    const double rh = std::max(mass_radius(h, 1e-14), h.dh.effective_radius(1.0, 1e-14));
    const double R = std::ceil(rg + rh);
    const long n = std::lround(2.0 * R / node_spacing);
    const double step = 2.0 * R / static_cast<double>(n);
    const std::vector<double> gbreaks = aligned_breaks(rg, 1.0, g.breakpoints);

    auto conv = [&](const ComplexFn& k, double x) {
        return integrate_smooth([&](double u) { return g.g(u) * k(x - u); }, -rg, rg, gbreaks, 1e-13).value;
    };
    std::vector<Complex> G, G1, G2, G3;
    for (long i = 0; i <= n; ++i) {
        const double x = -R + step * static_cast<double>(i);
        G.push_back(conv(h.g, x));
        G1.push_back(conv(h.h, x));
        G2.push_back(conv(h.dh.density, x));
        G3.push_back(conv(h.d3, x));
    }

    ConvolvedMultiplier out;
    out.node_spacing = step;
    out.l1_estimate = trapezoid_abs(G, step);
    out.l1_bound = g.g_l1 * h.g_l1;
    out.var_estimate = trapezoid_abs(G2, step);
    out.var_bound = g.g_l1 * h.dh.total_variation;

    BVMultiplier& m = out.multiplier;
    m.label = g.label + "*" + h.label;
    m.g = HermiteTable(-R, step, G, G1);
    m.h = HermiteTable(-R, step, G1, G2);
    m.dh.density = HermiteTable(-R, step, G2, G3);
    m.dh.total_variation = out.var_bound;
    m.dh.support_radius = R;
    m.g_l1 = out.l1_bound;
    m.g_sup = g.g_sup * h.g_l1;
    m.g_support = R;
    double m2 = 0.0;
    for (long i = 0; i <= n; ++i) {
        const double x = -R + step * static_cast<double>(i);
        m2 = std::max(m2, x * x * std::abs(G[static_cast<std::size_t>(i)]));
    }
    m.moment2_sup = 1.01 * m2;
    if (g.ghat_analytic && h.ghat_analytic) m.ghat_analytic = multiply(*g.ghat_analytic, *h.ghat_analytic);
    m.real_valued = g.real_valued && h.real_valued;
    return out;
}

IdentityReport conv_identity_1(const BoundedFunction& f, const BVMultiplier& g, const BVMultiplier& h,
                               double tol) {
    require_gaussian(g, "g");
    require_gaussian(h, "h");
    IdentityReport rep;
    rep.lhs = pair(convolve_function(f, g), h, 0.5 * tol);

    const auto [sg, cg] = *g.gaussian_shape;
    const auto [sh, ch] = *h.gaussian_shape;
    const ComplexFn gf = g.g;
    const ComplexFn hhat = h.ghat_analytic->full;
    const double rg = mass_radius(g, 1e-15);
    const std::vector<double> gbreaks = aligned_breaks(rg, 1.0, {cg});
    // W(s) = int g(u) h^(s + u) du
    ComplexFn W = memoize([=](double s) {
        return integrate_smooth([&](double u) { return gf(u) * hhat(s + u); }, -rg, rg, gbreaks, 1e-13).value;
    });
    // |W| <= A int |g(u)| exp(-(s+u)^2 / (2 tau^2)) du with tau = 1/sigma_h
    const double tau = 1.0 / sh;
    const double width = std::hypot(sg, tau);
    const double B = sh * std::sqrt(2.0 * kPi) * std::sqrt(2.0 * kPi) * sg * tau / width;
    Weight w;
    w.full = W;
    w.far = {{ch, [W, ch](double s) { return std::polar(1.0, ch * s) * W(s); },
              B * gaussian_power_sup(2.0, -cg, width, 1.0), B * gaussian_power_sup(0.0, -cg, width, 1.0)}};
    w.near_sup = B;
    w.max_freq = std::abs(ch) + 1.0;
    w.label = "W";
    rep.rhs = integrate_against(f, w, Region::All, 0.5 * tol);
    rep.residual = std::abs(rep.lhs.value - rep.rhs.value);
    return rep;
}

IdentityReport conv_identity_2(const BoundedFunction& f, const BVMultiplier& g, const BVMultiplier& h,
                               double tol) {
    if (!g.ghat_analytic || !h.ghat_analytic) {
        throw ParameterError("identity 2 needs analytic transforms of g and h");
    }
    const ConvolvedMultiplier G = convolve_multipliers(g, h);
    IdentityReport rep;
    rep.lhs = pair(f, G.multiplier, 0.5 * tol);
    rep.rhs = integrate_against(f, multiply(*g.ghat_analytic, *h.ghat_analytic), Region::All, 0.5 * tol);
    rep.residual = std::abs(rep.lhs.value - rep.rhs.value);
    rep.l1_estimate = G.l1_estimate;
    rep.l1_bound = G.l1_bound;
    rep.var_estimate = G.var_estimate;
    rep.var_bound = G.var_bound;
    return rep;
}

}  // namespace bdft
