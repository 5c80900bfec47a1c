#include "bdft/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "bdft/convolution.hpp"
#include "bdft/inversion.hpp"
#include "bdft/sampling.hpp"
#include "bdft/special.hpp"

namespace bdft {

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

struct ExchangeCase {
    const char* f;
    const char* m;
};

// Fixed catalog pairs covering every function family and multiplier shape.
constexpr ExchangeCase kExchangeCases[] = {
    {"const:c=1", "gaussian:sigma=1"},
    {"sgn", "odd_gaussian:sigma=1"},
    {"cos_recip:a=1", "gaussian:sigma=1"},
    {"atan_over:a=1", "gaussian:sigma=1,center=0.5"},
    {"expwave:x=0.5", "triangle:width=2"},
    {"gaussian:sigma=1,center=0.3", "gaussian:sigma=2,center=-1"},
    {"indicator:lo=-0.5,hi=2", "triangle:width=3"},
    {"exp_i_recip:a=1", "gaussian:sigma=0.7,center=0.5"},
    {"cos_recip_pow:m=2,a=1", "odd_gaussian:sigma=0.8"},
    {"atan_recip:a=1", "gaussian:sigma=1.5,center=0.25"},
    {"x_sin_recip:a=1", "gaussian:sigma=1"},
    {"atan_over:a=0.5", "odd_gaussian:sigma=1.5"},
};

struct Context {
    const RunConfig& cfg;
    std::optional<std::vector<ExchangeReport>> exchange;

    const std::vector<ExchangeReport>& exchange_reports() {
        if (!exchange) {
            std::vector<ExchangeReport> reports;
            for (const auto& c : kExchangeCases) {
                reports.push_back(exchange_report(parse_function(c.f), parse_multiplier(c.m), cfg.tol));
            }
            exchange = std::move(reports);
        }
        return *exchange;
    }
};

Outcome holder(Context& ctx) {
    const BoundedFunction fs[] = {catalog("const"), catalog("sgn"), catalog("cos_recip", {1.0})};
    Halton seq(ctx.cfg.seed);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto u = seq.next<3>();
        const double s = -50.0 + 100.0 * u[0];
        const double mag = std::pow(10.0, -6.0 + (6.0 + std::log10(0.3)) * u[1]);
        const double h = u[2] < 0.5 ? -mag : mag;
        worst = std::max(worst, holder_ratio(fs[i % 3], s, h));
    }
    return {worst <= 6.0 + 1e-3, fmt("max ratio %.4f over 200 samples (bound 6)", worst)};
}

Outcome sharpness(Context&) {
    double lo = kInf;
    for (double h : {1e-2, 1e-3, 1e-4}) lo = std::min(lo, holder_ratio(sharpness_witness(0.0, h), 0.0, h));
    const double floor = 1.0 / kPi - 0.05;
    return {lo >= floor, fmt("min ratio %.4f (floor %.4f)", lo, floor)};
}

Outcome exchange(Context& ctx) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : ctx.exchange_reports()) {
        const double scaled = r.residual / (1.0 + std::abs(r.rhs.value));
        worst = std::max(worst, scaled);
        ok = ok && scaled <= ctx.cfg.comparison_tol;
    }
    return {ok, fmt("12 pairs, max residual/(1+|rhs|) %.3g", worst)};
}

Outcome corollary_bound(Context& ctx) {
    double tightest = 0.0;
    bool ok = true;
    for (const auto& r : ctx.exchange_reports()) {
        const double lhs = std::abs(r.lhs.value);
        ok = ok && lhs <= r.bound + 10.0 * r.lhs.err_est;
        if (r.bound > 0.0) tightest = std::max(tightest, lhs / r.bound);
    }
    return {ok, fmt("12 pairs, max |pair|/bound %.3f", tightest)};
}

Outcome dirac(Context& ctx) {
    const BVMultiplier m = multiplier_catalog("gaussian", {1.0});
    double worst = 0.0;
    for (double x : {-2.0, 0.0, 1.5}) {
        const QuadResult r = pair(catalog("expwave", {x}), m, ctx.cfg.tol);
        worst = std::max(worst, std::abs(r.value - 2.0 * kPi * std::exp(-0.5 * x * x)));
    }
    return {worst <= ctx.cfg.comparison_tol, fmt("max |pair - 2 pi g(x)| %.3g", worst)};
}

Outcome route_equivalence(Context& ctx) {
    const char* fs[] = {"atan_over:a=1", "sgn", "gaussian:sigma=1,center=0.3"};
    const char* ks[] = {"fejer", "poisson", "gauss"};
    Halton seq(ctx.cfg.seed);
    double worst = 0.0;
    for (int i = 0; i < 9; ++i) {
        const auto u = seq.next<1>();
        const BoundedFunction f = parse_function(fs[i % 3]);
        const SummabilityKernel& K = summability_kernel(ks[i / 3]);
        const double a = (i % 2 == 0) ? 0.5 : 0.1;
        const double x = -2.0 + 4.0 * u[0];
        const QuadResult p = invert_at(f, K, a, x, ctx.cfg.tol);
        const QuadResult d = invert_direct(f, K, a, x, ctx.cfg.tol);
        worst = std::max(worst, std::abs(p.value - d.value));
    }
    return {worst <= 1e-5, fmt("9 cases, max |pairing - direct| %.3g", worst)};
}

Outcome convergence(Context& ctx) {
    std::vector<double> grid;
    for (int i = 0; i < 61; ++i) grid.push_back(-3.0 + 0.1 * i);
    const SweepTable t =
        inversion_sweep(catalog("atan_over", {1.0}), summability_kernel("gauss"), {0.4, 0.2, 0.1, 0.05}, grid, ctx.cfg.tol);
    bool decreasing = true;
    for (std::size_t i = 1; i < t.max_error.size(); ++i) decreasing = decreasing && t.max_error[i] < t.max_error[i - 1];
    const double last = t.max_error.back();
    std::string detail = "max errors";
    for (double e : t.max_error) detail += fmt(" %.3g", e);
    return {decreasing && last <= 1e-2, detail};
}

Outcome kernel_hypotheses(Context&) {
    const HypothesisReport g = corollary_hypotheses_check(summability_kernel("gauss"));
    const HypothesisReport f = corollary_hypotheses_check(summability_kernel("fejer"));
    const HypothesisReport p = corollary_hypotheses_check(summability_kernel("poisson"));
    bool rejected = false;
    try {
        invert_at(catalog("const"), summability_kernel("dirichlet"), 0.5, 0.0);
    } catch (const ParameterError&) {
        rejected = true;
    }
    const bool ok = g.all_finite() && !f.moments[0].finite && !p.moments[0].finite && rejected;
    std::string detail = "gauss finite " + std::string(g.all_finite() ? "yes" : "no") + ", fejer p2 psi " +
                         (f.moments[0].finite ? "finite" : "divergent") + ", poisson p2 psi " +
                         (p.moments[0].finite ? "finite" : "divergent") + ", dirichlet " +
                         (rejected ? "rejected" : "accepted");
    return {ok, detail};
}

struct ConvCase {
    const char* f;
    const char* g;
    const char* h;
};

constexpr ConvCase kIdentity1[] = {
    {"const:c=1", "gaussian:sigma=1", "gaussian:sigma=1"},
    {"sgn", "gaussian:sigma=1", "gaussian:sigma=2"},
    {"cos_recip:a=1", "gaussian:sigma=1", "gaussian:sigma=2"},
    {"atan_over:a=1", "gaussian:sigma=0.7,center=0.3", "gaussian:sigma=1,center=0.5"},
    {"expwave:x=0.5", "gaussian:sigma=1", "gaussian:sigma=1,center=-0.5"},
    {"gaussian:sigma=1,center=0.5", "gaussian:sigma=0.8", "gaussian:sigma=1.5"},
};

constexpr ConvCase kIdentity2[] = {
    {"sgn", "gaussian:sigma=1", "gaussian:sigma=1"},
    {"const:c=1", "triangle:width=2", "gaussian:sigma=1"},
    {"cos_recip:a=1", "gaussian:sigma=1,center=0.5", "gaussian:sigma=1.5"},
    {"atan_over:a=1", "triangle:width=2", "gaussian:sigma=1,center=0.3"},
    {"expwave:x=1", "gaussian:sigma=0.8", "gaussian:sigma=1"},
    {"exp_i_recip:a=1", "triangle:width=3", "gaussian:sigma=1"},
};

Outcome convolution(Context& ctx) {
    double w1 = 0.0, w2 = 0.0;
    bool norms = true;
    for (const auto& c : kIdentity1) {
        const IdentityReport r =
            conv_identity_1(parse_function(c.f), parse_multiplier(c.g), parse_multiplier(c.h), ctx.cfg.tol);
        w1 = std::max(w1, r.residual);
    }
    for (const auto& c : kIdentity2) {
        const IdentityReport r =
            conv_identity_2(parse_function(c.f), parse_multiplier(c.g), parse_multiplier(c.h), ctx.cfg.tol);
        w2 = std::max(w2, r.residual);
        norms = norms && r.l1_estimate <= r.l1_bound + 1e-6 && r.var_estimate <= r.var_bound + 1e-6;
    }
    return {w1 <= 1e-5 && w2 <= 1e-5 && norms,
            fmt("max residual identity 1 %.3g, identity 2 %.3g", w1, w2) + (norms ? "" : ", norm bound violated")};
}

Outcome closed_forms(Context& ctx) {
    struct Case {
        const char* name;
        std::vector<double> p;
    };
    const std::vector<Case> cases = {{"cos_recip", {1.0}},     {"cos_recip", {2.0}},   {"cos_recip_pow", {2.0, 1.0}},
                                     {"cos_recip_pow", {3.0, 1.0}}, {"exp_i_recip", {1.0}}, {"exp_i_recip", {-1.0}},
                                     {"atan_over", {1.0}},     {"atan_recip", {1.0}}};
    const BVMultiplier ms[] = {multiplier_catalog("gaussian", {1.0, 0.5}), multiplier_catalog("gaussian", {2.0, -1.0})};
    double worst = 0.0;
    for (const auto& c : cases) {
        for (const auto& m : ms) worst = std::max(worst, closed_form_residual(c.name, c.p, m, ctx.cfg.tol));
    }
    std::string diag;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const ClosedFormReport r = closed_form_report("x_sin_recip", {1.0}, ms[0], ctx.cfg.tol, eps);
        diag += fmt(" %.3g", r.residual);
    }
    return {worst <= 1e-5, fmt("16 pairings, max residual %.3g; x sin(1/x) diagnostic residuals at eps 1e-2,1e-3,1e-4:", worst) + diag};
}

Outcome sum_rule(Context&) {
    double worst = 0.0;
    for (double a : {1.0, 2.0}) worst = std::max(worst, cos_recip_sum_rule(a).residual);
    return {worst <= 1e-4, fmt("max |integral - density limit| %.3g", worst)};
}

Outcome omega_growth(Context&) {
    const double r2 = omega_growth_ratio(1e2);
    const double r4 = omega_growth_ratio(1e4);
    return {r4 >= 0.9 && r4 <= 1.1 && std::abs(r4 - 1.0) < std::abs(r2 - 1.0),
            fmt("ratio at 1e2 %.4f, at 1e4 %.4f", r2, r4)};
}

Outcome omega_second(Context&) {
    double worst = 0.0;
    for (const BoundedFunction& f : {catalog("const"), catalog("sgn")}) {
        for (double s : {-2.0, -0.5, 0.7, 1.5, 3.0}) worst = std::max(worst, omega_second_derivative_check(f, s, 1e-3));
    }
    return {worst <= 1e-3, fmt("max residual %.3g at delta 1e-3", worst)};
}

Outcome riemann_lebesgue(Context& ctx) {
    double worst = 0.0;
    for (const BoundedFunction& f : {catalog("const"), catalog("sgn"), catalog("cos_recip", {1.0})}) {
        worst = std::max(worst, std::abs(psi(f, 1e4, ctx.cfg.tol).value));
    }
    return {worst <= 1e-2, fmt("max |Psi(1e4)| %.3g", worst)};
}

// Independent oracle: terms computed from powers and factorials directly.
long double long_series(int n, long double x) {
    long double sum = 0.0L;
    for (int k = 0; k < 60; ++k) {
        const long double term = std::pow(x / 2.0L, 2 * k + n) / (std::tgamma(k + 1.0L) * std::tgamma(k + n + 1.0L));
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

Outcome bessel(Context&) {
    double worst = 0.0, overlap = 0.0;
    for (int i = 0; i <= 240; ++i) {
        const double x = 0.05 * i;
        worst = std::max(worst, std::abs(bessel_j0(x) - static_cast<double>(long_series(0, x))));
        worst = std::max(worst, std::abs(bessel_j1(x) - static_cast<double>(long_series(1, x))));
    }
    for (int i = 0; i <= 200; ++i) {
        const double x = 10.0 + 0.01 * i;
        for (int n : {0, 1}) overlap = std::max(overlap, std::abs(bessel_series(n, x) - bessel_asymptotic(n, x)));
    }
    return {worst <= 1e-10 && overlap <= 1e-8, fmt("max error %.3g on [0,12], branch overlap %.3g on [10,12]", worst, overlap)};
}

struct Entry {
    CriterionInfo info;
    std::function<Outcome(Context&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e = {
        {{1, "holder", "Hoelder modulus battery", 60}, holder},
        {{2, "sharpness", "Hoelder sharpness floor", 30}, sharpness},
        {{3, "exchange", "exchange formula suite", 120}, exchange},
        {{4, "corollary_bound", "pairing norm bound", 120}, corollary_bound},
        {{5, "dirac", "Dirac recovery", 20}, dirac},
        {{6, "route_equivalence", "inversion route equivalence", 120}, route_equivalence},
        {{7, "convergence", "inversion convergence", 90}, convergence},
        {{8, "kernel_hypotheses", "kernel hypothesis report", 20}, kernel_hypotheses},
        {{9, "convolution", "convolution identities", 180}, convolution},
        {{10, "closed_forms", "closed-form validation", 180}, closed_forms},
        {{11, "sum_rule", "cos(a/t) sum rule", 30}, sum_rule},
        {{12, "omega_growth", "Omega growth witness", 30}, omega_growth},
        {{13, "omega_second", "Omega second derivative", 20}, omega_second},
        {{14, "riemann_lebesgue", "Riemann-Lebesgue decay", 30}, riemann_lebesgue},
        {{15, "bessel", "Bessel accuracy", 10}, bessel},
    };
    return e;
}

}  // namespace

const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> infos = [] {
        std::vector<CriterionInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::vector<CriterionResult> run_acceptance(const RunConfig& cfg, const std::vector<std::string>& only) {
    cfg.validate();
    for (const auto& key : only) {
        const auto& es = entries();
        if (std::none_of(es.begin(), es.end(), [&](const Entry& e) { return e.info.key == key; })) {
            throw ParameterError("unknown criterion: " + key);
        }
    }
    const long saved_budget = default_budget();
    set_default_budget(cfg.panel_budget);
    Context ctx{cfg, std::nullopt};
    std::vector<CriterionResult> results;
    for (const auto& e : entries()) {
        if (!only.empty() && std::find(only.begin(), only.end(), e.info.key) == only.end()) continue;
        CriterionResult r;
        r.id = e.info.id;
        r.key = e.info.key;
        r.title = e.info.title;
        r.time_limit = e.info.time_limit;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = e.run(ctx);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& ex) {
            r.passed = false;
            r.detail = std::string("error: ") + ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > r.time_limit) {
            r.passed = false;
            r.detail += " (time limit exceeded)";
        }
        results.push_back(r);
    }
    set_default_budget(saved_budget);
    return results;
}

std::string format_result(const CriterionResult& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %2d %-18s (%.1f s / %.0f s)  ", r.passed ? "PASS" : "FAIL", r.id, r.key.c_str(),
                  r.seconds, r.time_limit);
    return buf + r.detail;
}

}  // namespace bdft
