#include "bdft/weighted.hpp"

#include <algorithm>
#include <cmath>

namespace bdft {

namespace {

double panel_for(double freq) { return std::min(0.5, kPi / std::max(1.0, std::abs(freq))); }

QuadResult near_region(const BoundedFunction& f, const Weight& w, double tol, long budget) {
    if (w.near_sup == 0.0 || f.sup_bound() == 0.0) return {};
    const ComplexFn& k = w.full;
    if (f.has_reciprocal_modes()) {
        // t = 1/u maps (0 < |t| <= 1) onto |u| >= 1, turning exp(i w / t) into a carrier.
        TailSpec spec;
        for (const auto& m : f.reciprocal_modes()) {
            const ComplexFn& a = m.amplitude;
            spec.terms.push_back({-m.freq,
                                  [&a, &k](double u) {
                                      const double t = 1.0 / u;
                                      return a(t) * k(t) * (t * t);
                                  },
                                  m.bound * w.near_sup});
        }
        for (double b : f.breakpoints()) {
            if (b != 0.0 && std::abs(b) < 1.0) spec.breakpoints.push_back(1.0 / b);
        }
        for (double b : w.breakpoints) {
            if (b != 0.0 && std::abs(b) < 1.0) spec.breakpoints.push_back(1.0 / b);
        }
        return integrate_tail(spec, tol, budget);
    }
    std::vector<double> breaks = f.breakpoints();
    breaks.insert(breaks.end(), w.breakpoints.begin(), w.breakpoints.end());
    if (w.far_radius == 0.0 && !w.far.empty()) {
        std::vector<double> pts{-1.0};
        for (double b : breaks) {
            if (b > -1.0 && b < 1.0) pts.push_back(b);
        }
        for (double x = -0.75; x < 1.0; x += 0.25) pts.push_back(x);
        pts.push_back(1.0);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        QuadResult r;
        r.panels = 0;
        const double share = tol / static_cast<double>(w.far.size());
        for (const auto& term : w.far) {
            const ComplexFn& a = term.amp;
            r += integrate_filon([&f, &a](double t) { return f(t) * a(t); }, term.lambda, pts, share,
                                 budget);
        }
        return r;
    }
    return integrate_smooth([&f, &k](double t) { return f(t) * k(t); }, -1.0, 1.0, breaks, tol,
                            panel_for(w.max_freq), budget);
}

QuadResult outer_region(const BoundedFunction& f, const Weight& w, double tol, long budget) {
    if (f.sup_bound() == 0.0) return {};
    const double R = std::max({1.0, f.far_radius(), w.far_radius});
    QuadResult r;
    r.panels = 0;
    const double far_tol = R > 1.0 ? 0.5 * tol : tol;
    if (R > 1.0) {
        std::vector<double> breaks = f.breakpoints();
        breaks.insert(breaks.end(), w.breakpoints.begin(), w.breakpoints.end());
        for (const auto& lat : f.lattices()) {
            const double k0 = std::ceil((-R - lat.offset) / lat.spacing);
            const double k1 = std::floor((R - lat.offset) / lat.spacing);
            for (double k = k0; k <= k1; k += 1.0) breaks.push_back(lat.offset + k * lat.spacing);
        }
        const ComplexFn& k = w.full;
        if (w.far_radius <= 1.0 && !w.far.empty()) {
            for (double sign : {1.0, -1.0}) {
                std::vector<double> pts;
                for (double x = 1.0; x < R; x += 1.0) pts.push_back(x);
                pts.push_back(R);
                for (double b : breaks) {
                    if (sign * b > 1.0 && sign * b < R) pts.push_back(sign * b);
                }
                std::sort(pts.begin(), pts.end());
                pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
                for (const auto& term : w.far) {
                    const ComplexFn& a = term.amp;
                    auto integrand = [&f, &a, sign](double tau) { return f(sign * tau) * a(sign * tau); };
                    r += integrate_filon(integrand, sign * term.lambda, pts,
                                         0.25 * tol / static_cast<double>(w.far.size()), budget);
                }
            }
        } else {
            auto integrand = [&f, &k](double t) { return f(t) * k(t); };
            const double mp = std::min(1.0, panel_for(w.max_freq));
            r += integrate_smooth(integrand, 1.0, R, breaks, 0.25 * tol, mp, budget);
            r += integrate_smooth(integrand, -R, -1.0, breaks, 0.25 * tol, mp, budget);
        }
    }
    TailSpec spec;
    spec.r0 = R;
    for (const auto& carrier : f.far_field()) {
        for (const auto& term : w.far) {
            const double bound = carrier.bound * term.bound;
            if (bound == 0.0) continue;
            const ComplexFn& env = carrier.envelope;
            const ComplexFn& a = term.amp;
            spec.terms.push_back({term.lambda - carrier.freq,
                                  [&env, &a](double t) { return env(t) * a(t); }, bound});
        }
    }
    spec.breakpoints = f.breakpoints();
    spec.breakpoints.insert(spec.breakpoints.end(), w.breakpoints.begin(), w.breakpoints.end());
    spec.lattices = f.lattices();
    r += integrate_tail(spec, far_tol, budget);
    return r;
}

}  // namespace

QuadResult integrate_against(const BoundedFunction& f, const Weight& w, Region region, double tol,
                             long budget) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    if (!w.full) throw ParameterError("weight has no evaluation handle");
    switch (region) {
        case Region::Near:
            return near_region(f, w, tol, budget);
        case Region::Outer:
            return outer_region(f, w, tol, budget);
        case Region::All:
            break;
    }
    QuadResult r = near_region(f, w, 0.5 * tol, budget);
    r += outer_region(f, w, 0.5 * tol, budget);
    return r;
}

Weight scale(const Weight& w, Complex c) {
    Weight r = w;
    const ComplexFn full = w.full;
    r.full = [full, c](double t) { return c * full(t); };
    const double ac = std::abs(c);
    for (auto& term : r.far) {
        const ComplexFn amp = term.amp;
        term.amp = [amp, c](double t) { return c * amp(t); };
        term.bound *= ac;
        term.sup *= ac;
    }
    r.near_sup *= ac;
    return r;
}

Weight multiply(const Weight& a, const Weight& b) {
    Weight r;
    const ComplexFn fa = a.full, fb = b.full;
    r.full = [fa, fb](double t) { return fa(t) * fb(t); };
    r.far_radius = std::max(a.far_radius, b.far_radius);
    if (r.far_radius == 0.0) r.far_radius = 1.0;
    for (const auto& x : a.far) {
        for (const auto& y : b.far) {
            const ComplexFn ax = x.amp, ay = y.amp;
            r.far.push_back({x.lambda + y.lambda, [ax, ay](double t) { return ax(t) * ay(t); },
                             std::min(x.bound * y.sup, x.sup * y.bound), x.sup * y.sup});
        }
    }
    r.near_sup = a.near_sup * b.near_sup;
    r.max_freq = a.max_freq + b.max_freq;
    r.breakpoints = a.breakpoints;
    r.breakpoints.insert(r.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end());
    r.label = a.label + "*" + b.label;
    return r;
}

}  // namespace bdft
