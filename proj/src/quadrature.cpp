#include "bdft/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>

namespace bdft {

namespace {

std::atomic<long> g_budget{kDefaultBudget};

long resolve_budget(long budget) { return budget > 0 ? budget : g_budget.load(); }

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 7/15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a = 0.0, b = 0.0;
    Complex value{};
    double err = 0.0;
    double floor = 0.0;
};

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.err < y.err; }
};

Panel gk15(const ComplexFn& f, double a, double b) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const Complex fc = f(c);
    Complex kron = fc * kWgk[7];
    Complex gauss = fc * kWg[3];
    double resabs = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = hw * kXgk[j];
        const Complex f1 = f(c - dx), f2 = f(c + dx);
        kron += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kron * hw;
    p.floor = 50.0 * kEps * resabs * std::abs(hw);
    p.err = std::max(std::abs((kron - gauss) * hw), p.floor);
    return p;
}

// Panels whose error is already at round-off level, or which are too narrow
// to bisect, are retired instead of refined.
bool splittable(const Panel& p) {
    const double width = p.b - p.a;
    const double scale = std::max(std::abs(p.a), std::abs(p.b));
    return p.err > 2.0 * p.floor && width > 64.0 * kEps * std::max(scale, 1e-300);
}

template <class PanelFn>
QuadResult run_adaptive(const std::vector<double>& pts, double tol, long budget, int evals_per_panel,
                        const char* what, PanelFn&& panel_fn) {
    std::priority_queue<Panel, std::vector<Panel>, ByError> open;
    std::vector<Panel> done;
    QuadResult r;
    r.panels = 0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Panel p = panel_fn(pts[i], pts[i + 1]);
        r.evaluations += evals_per_panel;
        ++r.panels;
        total_err += p.err;
        if (splittable(p)) open.push(p); else done.push_back(p);
    }
    auto finish = [&] {
        r.value = {};
        r.err_est = 0.0;
        while (!open.empty()) { done.push_back(open.top()); open.pop(); }
        // Summation in position order keeps results reproducible.
        std::sort(done.begin(), done.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
        for (const auto& p : done) {
            r.value += p.value;
            r.err_est += p.err;
        }
        if (r.panels < 1) r.panels = 1;
        return r;
    };
    while (total_err > tol && !open.empty()) {
        if (r.evaluations + 2 * evals_per_panel > budget) {
            throw BudgetExceeded(std::string(what) + ": evaluation budget exceeded", finish());
        }
        Panel p = open.top();
        open.pop();
        const double mid = 0.5 * (p.a + p.b);
        Panel left = panel_fn(p.a, mid), right = panel_fn(mid, p.b);
        r.evaluations += 2 * evals_per_panel;
        ++r.panels;
        total_err += left.err + right.err - p.err;
        for (auto& q : {left, right}) {
            if (splittable(q)) open.push(q); else done.push_back(q);
        }
    }
    return finish();
}

std::vector<double> make_partition(double a, double b, const std::vector<double>& breakpoints,
                                   double max_panel) {
    std::vector<double> pts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) pts.push_back(x);
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (!(max_panel < kInf)) return pts;
    std::vector<double> out{pts.front()};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double len = pts[i + 1] - pts[i];
        const long n = std::max(1L, static_cast<long>(std::ceil(len / max_panel - 1e-12)));
        for (long k = 1; k < n; ++k) out.push_back(pts[i] + len * static_cast<double>(k) / n);
        out.push_back(pts[i + 1]);
    }
    return out;
}

// Legendre-Gauss rule with 40 nodes, used for mid-range moments.
struct GaussLegendre40 {
    std::array<double, 40> x{}, w{};
    GaussLegendre40() {
        const int n = 40;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre40& gl40() {
    static const GaussLegendre40 rule;
    return rule;
}

constexpr int kMaxDegree = 12;

// Monomial coefficients of the Chebyshev polynomials T_0..T_12.
const std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1>& cheb_table() {
    static const auto table = [] {
        std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1> t{};
        t[0][0] = 1.0;
        t[1][1] = 1.0;
        for (int k = 2; k <= kMaxDegree; ++k) {
            for (int j = 0; j <= kMaxDegree; ++j) {
                t[k][j] = -t[k - 2][j] + (j > 0 ? 2.0 * t[k - 1][j - 1] : 0.0);
            }
        }
        return t;
    }();
    return table;
}

constexpr int kFilonDegree = 8;

const std::array<double, kFilonDegree + 1>& lobatto_nodes() {
    static const auto nodes = [] {
        std::array<double, kFilonDegree + 1> u{};
        for (int j = 0; j <= kFilonDegree; ++j) u[j] = std::cos(kPi * j / kFilonDegree);
        return u;
    }();
    return nodes;
}

Panel filon_panel(const ComplexFn& w, double nu, double a, double b) {
    constexpr int n = kFilonDegree;
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    const auto& u = lobatto_nodes();
    std::array<Complex, n + 1> vals{};
    double vmax = 0.0;
    for (int j = 0; j <= n; ++j) {
        double t = c + hw * u[j];
        // one-sided values at the ends, so jumps at breakpoints do not leak in
        if (j == 0) t = std::nextafter(b, a);
        if (j == n) t = std::nextafter(a, b);
        vals[j] = w(t);
        vmax = std::max(vmax, std::abs(vals[j]));
    }
    std::array<Complex, n + 1> cheb{};
    for (int k = 0; k <= n; ++k) {
        Complex sum{};
        for (int j = 0; j <= n; ++j) {
            const double wt = (j == 0 || j == n) ? 0.5 : 1.0;
            sum += wt * vals[j] * std::cos(kPi * j * k / n);
        }
        cheb[k] = sum * (2.0 / n);
    }
    cheb[0] *= 0.5;
    cheb[n] *= 0.5;

    const auto& table = cheb_table();
    std::array<Complex, n + 1> mono{};
    for (int k = 0; k <= n; ++k) {
        for (int j = 0; j <= k; ++j) mono[j] += cheb[k] * table[k][j];
    }
    const double kappa = nu * hw;
    const auto m = monomial_moments(kappa, n);
    Complex acc{};
    for (int j = 0; j <= n; ++j) acc += mono[j] * m[j];

    Panel p;
    p.a = a;
    p.b = b;
    p.value = hw * std::polar(1.0, -nu * c) * acc;
    const double damp = std::min(1.0, (n + 2.0) / std::max(std::abs(kappa), 1e-300));
    p.floor = 1e3 * kEps * vmax * std::abs(hw);
    p.err = std::max(2.0 * std::abs(hw) * (std::abs(cheb[n - 1]) + std::abs(cheb[n])) * damp, p.floor);
    return p;
}

std::vector<double> side_partition(double r0, double T, const TailSpec& spec, double sign,
                                   long max_points) {
    std::vector<double> pts{r0};
    double x = r0;
    while (x < T) {
        x = x < 10.0 ? std::floor(x) + 1.0 : 1.5 * x;
        pts.push_back(std::min(x, T));
    }
    for (double b : spec.breakpoints) {
        const double tau = sign * b;
        if (tau > r0 && tau < T) pts.push_back(tau);
    }
    for (const auto& lat : spec.lattices) {
        // points t = offset + k*spacing with sign*t in (r0, T)
        const double lo = sign > 0 ? r0 : -T, hi = sign > 0 ? T : -r0;
        const double k0 = std::ceil((lo - lat.offset) / lat.spacing);
        const double k1 = std::floor((hi - lat.offset) / lat.spacing);
        if (k1 - k0 + 1 > static_cast<double>(max_points)) {
            throw BudgetExceeded("lattice breakpoints exceed the evaluation budget below the cutoff",
                                 QuadResult{{}, kInf, 1, 0});
        }
        for (double k = k0; k <= k1; k += 1.0) {
            const double tau = sign * (lat.offset + k * lat.spacing);
            if (tau > r0 && tau < T) pts.push_back(tau);
        }
    }
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double p : pts) {
        if (out.empty() || p - out.back() > 1e-13 * std::max(1.0, std::abs(p))) out.push_back(p);
    }
    if (out.back() < T) out.push_back(T);
    return out;
}

}  // namespace

long default_budget() { return g_budget.load(); }

void set_default_budget(long budget) {
    if (budget < 1000) throw ParameterError("panel budget must be at least 1000");
    g_budget.store(budget);
}

QuadResult integrate_smooth(const ComplexFn& f, double a, double b,
                            const std::vector<double>& breakpoints, double tol, double max_panel,
                            long budget) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    if (!std::isfinite(a) || !std::isfinite(b)) throw ParameterError("interval must be finite");
    if (a == b) return QuadResult{};
    if (a > b) {
        QuadResult r = integrate_smooth(f, b, a, breakpoints, tol, max_panel, budget);
        r.value = -r.value;
        return r;
    }
    const auto pts = make_partition(a, b, breakpoints, max_panel);
    return run_adaptive(pts, tol, resolve_budget(budget), 15, "integrate_smooth",
                        [&f](double x, double y) { return gk15(f, x, y); });
}

std::vector<Complex> monomial_moments(double kappa, int n) {
    if (n < 0 || n > kMaxDegree) throw ParameterError("moment degree must be in 0..12");
    std::vector<Complex> m(n + 1);
    const double ak = std::abs(kappa);
    if (ak < 1.0) {
        // exp(-i kappa u) expanded in powers of u
        const Complex z{0.0, -kappa};
        for (int k = 0; k <= n; ++k) {
            Complex term{1.0, 0.0}, sum{};
            for (int j = 0; j < 40; ++j) {
                if ((k + j) % 2 == 0) sum += term * (2.0 / (k + j + 1));
                term *= z / static_cast<double>(j + 1);
                if (std::abs(term) < 1e-20) break;
            }
            m[k] = sum;
        }
    } else if (ak < 12.0) {
        const auto& rule = gl40();
        for (int i = 0; i < 40; ++i) {
            const Complex e = rule.w[i] * std::polar(1.0, -kappa * rule.x[i]);
            double pw = 1.0;
            for (int k = 0; k <= n; ++k) {
                m[k] += pw * e;
                pw *= rule.x[i];
            }
        }
    } else {
        // forward recurrence from integration by parts, stable for k < |kappa|
        const Complex em = std::polar(1.0, -kappa), ep = std::polar(1.0, kappa);
        const Complex i_over_k{0.0, 1.0 / kappa};
        m[0] = 2.0 * std::sin(kappa) / kappa;
        for (int k = 1; k <= n; ++k) {
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            m[k] = i_over_k * (em - sgn * ep) - i_over_k * static_cast<double>(k) * m[k - 1];
        }
    }
    return m;
}

Complex oscillatory_panel_moment(const std::vector<Complex>& coeffs, double s, double a, double b) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg > kMaxDegree) throw ParameterError("polynomial degree must be <= 12");
    if (deg < 0 || a == b) return {};
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    // p(c + hw u) = sum_j q_j u^j
    std::vector<Complex> q(deg + 1);
    for (int k = 0; k <= deg; ++k) {
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            q[j] += coeffs[k] * binom * std::pow(c, k - j) * std::pow(hw, j);
            binom = binom * (k - j) / (j + 1);
        }
    }
    const auto m = monomial_moments(s * hw, deg);
    Complex acc{};
    for (int j = 0; j <= deg; ++j) acc += q[j] * m[j];
    return hw * std::polar(1.0, -s * c) * acc;
}

QuadResult integrate_filon(const ComplexFn& w, double nu, const std::vector<double>& partition,
                           double tol, long budget) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    if (partition.size() < 2) return QuadResult{};
    return run_adaptive(partition, tol, resolve_budget(budget), kFilonDegree + 1, "integrate_filon",
                        [&w, nu](double x, double y) { return filon_panel(w, nu, x, y); });
}

double tail_cutoff(double total_bound, double beta, double r0, double share) {
    if (!(beta > 1.0)) throw ParameterError("decay exponent must exceed 1");
    if (!(share > 0.0)) throw ParameterError("tolerance share must be positive");
    const double T = std::pow(2.0 * total_bound / ((beta - 1.0) * share), 1.0 / (beta - 1.0));
    return std::max(T, 2.0 * r0);
}

QuadResult integrate_tail(const TailSpec& spec, double tol, long budget) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    if (!(spec.r0 > 0.0)) throw ParameterError("tail start must be positive");
    double total = 0.0;
    int active = 0;
    for (const auto& t : spec.terms) {
        if (!std::isfinite(t.bound) || t.bound < 0.0) throw ParameterError("tail term needs a finite decay bound");
        if (t.bound > 0.0) {
            total += t.bound;
            ++active;
        }
    }
    QuadResult r;
    if (active == 0) return r;
    budget = resolve_budget(budget);
    const double T = tail_cutoff(total, spec.beta, spec.r0, 0.5 * tol);
    const double remainder = 2.0 * total / ((spec.beta - 1.0) * std::pow(T, spec.beta - 1.0));
    const double share = 0.5 * tol / (2.0 * active);
    r.panels = 0;
    for (double sign : {1.0, -1.0}) {
        const auto pts = side_partition(spec.r0, T, spec, sign, budget / (kFilonDegree + 1));
        for (const auto& term : spec.terms) {
            if (term.bound == 0.0) continue;
            const ComplexFn& amp = term.amp;
            ComplexFn w = sign > 0 ? amp : ComplexFn([&amp](double tau) { return amp(-tau); });
            r += integrate_filon(w, sign * term.nu, pts, share, budget);
        }
    }
    r.err_est += remainder;
    return r;
}

QuadResult integrate_oscillatory_tail(const ComplexFn& w, double s, double tol, double beta,
                                      double C) {
    if (!(beta >= 2.0)) throw ParameterError("decay exponent beta must be >= 2");
    if (!(C > 0.0) || !std::isfinite(C)) throw ParameterError("a finite positive decay constant C is required");
    TailSpec spec;
    spec.terms.push_back({s, w, C});
    spec.beta = beta;
    return integrate_tail(spec, tol);
}

double BVDecomposition::effective_radius(double F_bound, double share) const {
    if (std::isfinite(support_radius)) return support_radius;
    if (!tail_mass) throw ParameterError("unbounded BV support needs a tail bound");
    if (!std::isfinite(F_bound)) throw ParameterError("unbounded BV support needs a bound on the integrand");
    if (F_bound == 0.0) return 1.0;
    double hi = 1.0;
    while (F_bound * tail_mass(hi) > share) {
        hi *= 2.0;
        if (hi > 1e9) throw ParameterError("BV tail decays too slowly for the requested tolerance");
    }
    double lo = hi / 2.0;
    while (hi - lo > 1.0) {
        const double mid = std::floor(0.5 * (lo + hi));
        if (F_bound * tail_mass(mid) > share) lo = mid; else hi = mid;
    }
    return hi;
}

QuadResult integrate_stieltjes(const ComplexFn& F, const BVDecomposition& dh, double tol,
                               const StieltjesOptions& opts) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    const bool bounded = std::isfinite(dh.support_radius);
    const double R = dh.effective_radius(opts.F_bound, 0.25 * tol);
    QuadResult r;
    if (dh.density) {
        std::vector<double> extra = dh.density_breaks;
        extra.insert(extra.end(), opts.breakpoints.begin(), opts.breakpoints.end());
        const auto breaks = aligned_breaks(R, opts.max_panel, extra);
        const ComplexFn& d = dh.density;
        r += integrate_smooth([&F, &d](double t) { return F(t) * d(t); }, -R, R, breaks, 0.5 * tol,
                              kInf, opts.budget);
    }
    for (const auto& j : dh.jumps) {
        if (std::abs(j.at) <= R) {
            r.value += F(j.at) * j.size;
            ++r.evaluations;
        }
    }
    if (!bounded && dh.tail_mass) r.err_est += opts.F_bound * dh.tail_mass(R);
    return r;
}

std::vector<double> aligned_breaks(double R, double step, const std::vector<double>& extra) {
    std::vector<double> pts;
    if (step > 0.0 && std::isfinite(step)) {
        const long n = static_cast<long>(std::floor(R / step));
        for (long k = -n; k <= n; ++k) {
            const double x = k * step;
            if (x > -R && x < R) pts.push_back(x);
        }
    }
    for (double x : extra) {
        if (x > -R && x < R) pts.push_back(x);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double gaussian_moment_tail(int k, double sigma, double r) {
    if (k < 0) throw ParameterError("moment order must be non-negative");
    r = std::max(r, 0.0);
    const double s2 = sigma * sigma;
    const double e = std::exp(-r * r / (2.0 * s2));
    if (k == 0) return sigma * std::sqrt(kPi / 2.0) * std::erfc(r / (sigma * std::sqrt(2.0)));
    if (k == 1) return s2 * e;
    return s2 * std::pow(r, k - 1) * e + (k - 1) * s2 * gaussian_moment_tail(k - 2, sigma, r);
}

double gaussian_power_sup(double p, double c, double sigma, double r) {
    auto side = [&](double cc) {
        // maximize t^p exp(-(t - cc)^2 / 2 sigma^2) over t >= r
        const double tp = 0.5 * (cc + std::sqrt(cc * cc + 4.0 * p * sigma * sigma));
        const double t = std::max(tp, r);
        if (t <= 0.0) return p == 0.0 ? std::exp(-cc * cc / (2.0 * sigma * sigma)) : 0.0;
        return std::exp(p * std::log(t) - (t - cc) * (t - cc) / (2.0 * sigma * sigma));
    };
    return std::max(side(c), side(-c));
}

}  // namespace bdft
