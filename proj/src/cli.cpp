#include "bdft/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "bdft/acceptance.hpp"
#include "bdft/config.hpp"
#include "bdft/convolution.hpp"
#include "bdft/inversion.hpp"
#include "bdft/special.hpp"

namespace bdft {

namespace {

using json = nlohmann::json;

std::string num(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ParameterError("grid must be a:b:n, got '" + text + "'");
    double a = 0.0, b = 0.0;
    long n = 0;
    try {
        std::size_t used = 0;
        a = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("a");
        b = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("b");
        n = std::stol(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw ParameterError("grid must be a:b:n, got '" + text + "'");
    }
    if (n < 1 || n > 1'000'000 || !std::isfinite(a) || !std::isfinite(b)) throw ParameterError("grid: bad range or count");
    std::vector<double> v;
    for (long i = 0; i < n; ++i) v.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    return v;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json quad_json(const QuadResult& r) {
    return json{{"re", r.value.real()}, {"im", r.value.imag()}, {"err_est", r.err_est}};
}

struct Globals {
    std::string config_path;
    std::optional<double> tol, comparison_tol;
    std::optional<long> budget;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? config_from_environment() : load_config(config_path);
        if (tol) cfg.tol = *tol;
        if (comparison_tol) cfg.comparison_tol = *comparison_tol;
        if (budget) cfg.panel_budget = *budget;
        if (seed) cfg.seed = *seed;
        if (format) cfg.output_format = *format;
        cfg.validate();
        return cfg;
    }
};

std::string pick_format(const RunConfig& cfg, const std::string& out) {
    const std::string f = out.empty() ? cfg.output_format : out;
    if (f != "csv" && f != "json") throw ParameterError("--out must be csv or json");
    return f;
}

int run_transform(const RunConfig& cfg, const std::string& fspec, const std::string& grid, const std::string& out_fmt,
                  std::ostream& out) {
    const DistributionalTransform T(parse_function(fspec));
    const std::vector<double> s_list = parse_grid(grid);
    const std::string fmt = pick_format(cfg, out_fmt);
    json rows = json::array();
    if (fmt == "csv") out << "s,re_psi,im_psi,re_omega,im_omega,re_phi,im_phi,re_f1hat,im_f1hat,err_est\n";
    for (double s : s_list) {
        const QuadResult p = T.psi(s, cfg.tol);
        const QuadResult o = T.omega(s, cfg.tol);
        const QuadResult ph = T.phi(s, cfg.tol);
        const QuadResult f1 = T.f1_hat(s, cfg.tol);
        const double err = p.err_est + o.err_est + f1.err_est;
        if (fmt == "csv") {
            out << num(s) << ',' << num(p.value.real()) << ',' << num(p.value.imag()) << ',' << num(o.value.real()) << ','
                << num(o.value.imag()) << ',' << num(ph.value.real()) << ',' << num(ph.value.imag()) << ','
                << num(f1.value.real()) << ',' << num(f1.value.imag()) << ',' << num(err) << '\n';
        } else {
            rows.push_back({{"s", s},
                            {"re_psi", p.value.real()},
                            {"im_psi", p.value.imag()},
                            {"re_omega", o.value.real()},
                            {"im_omega", o.value.imag()},
                            {"re_phi", ph.value.real()},
                            {"im_phi", ph.value.imag()},
                            {"re_f1hat", f1.value.real()},
                            {"im_f1hat", f1.value.imag()},
                            {"err_est", err}});
        }
    }
    if (fmt == "json") out << rows.dump(2) << '\n';
    return 0;
}

int run_pair(const RunConfig& cfg, const std::string& fspec, const std::string& gspec, bool both, std::ostream& out) {
    const BoundedFunction f = parse_function(fspec);
    const BVMultiplier m = parse_multiplier(gspec);
    json j{{"f", f.label()}, {"g", m.label}};
    if (both) {
        const ExchangeReport r = exchange_report(f, m, cfg.tol);
        j["value"] = quad_json(r.lhs);
        j["exchange"] = quad_json(r.rhs);
        j["residual"] = r.residual;
        j["bound"] = r.bound;
        j["err_est"] = r.lhs.err_est + r.rhs.err_est;
        j["passed"] = r.residual <= cfg.comparison_tol * (1.0 + std::abs(r.rhs.value));
        out << j.dump(2) << '\n';
        return j["passed"].get<bool>() ? 0 : 1;
    }
    const QuadResult r = pair(f, m, cfg.tol);
    j["value"] = quad_json(r);
    j["bound"] = pairing_bound(f, m);
    j["err_est"] = r.err_est;
    out << j.dump(2) << '\n';
    return 0;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParameterError("bad number in list: '" + item + "'");
        }
    }
    if (v.empty()) throw ParameterError("empty list");
    return v;
}

int run_invert(const RunConfig& cfg, const std::string& fspec, const std::string& kernel, const std::string& a_text,
               const std::string& grid, const std::string& out_fmt, std::ostream& out) {
    const SweepTable t = inversion_sweep(parse_function(fspec), summability_kernel(kernel), parse_list(a_text),
                                         parse_grid(grid), cfg.tol);
    const std::string fmt = pick_format(cfg, out_fmt);
    std::vector<double> max_err_est(t.a_list.size(), 0.0);
    for (const auto& row : t.rows) {
        const auto k = static_cast<std::size_t>(std::find(t.a_list.begin(), t.a_list.end(), row.a) - t.a_list.begin());
        max_err_est[k] = std::max(max_err_est[k], row.value.err_est);
    }
    if (fmt == "csv") {
        out << "a,x,re_value,im_value,re_reference,im_reference,error,err_est\n";
        for (const auto& r : t.rows) {
            out << num(r.a) << ',' << num(r.x) << ',' << num(r.value.value.real()) << ',' << num(r.value.value.imag())
                << ',' << num(r.reference.real()) << ',' << num(r.reference.imag()) << ',' << num(r.error) << ','
                << num(r.value.err_est) << '\n';
        }
        out << "\na,max_error,err_est\n";
        for (std::size_t k = 0; k < t.a_list.size(); ++k) {
            out << num(t.a_list[k]) << ',' << num(t.max_error[k]) << ',' << num(max_err_est[k]) << '\n';
        }
        return 0;
    }
    json rows = json::array(), summary = json::array();
    for (const auto& r : t.rows) {
        rows.push_back({{"a", r.a},
                        {"x", r.x},
                        {"value", complex_json(r.value.value)},
                        {"reference", complex_json(r.reference)},
                        {"error", r.error},
                        {"err_est", r.value.err_est}});
    }
    for (std::size_t k = 0; k < t.a_list.size(); ++k) {
        summary.push_back({{"a", t.a_list[k]}, {"max_error", t.max_error[k]}, {"err_est", max_err_est[k]}});
    }
    out << json{{"rows", rows}, {"max_error", summary}}.dump(2) << '\n';
    return 0;
}

int run_convolve(const RunConfig& cfg, const std::string& fspec, const std::string& gspec, const std::string& hspec,
                 int identity, std::ostream& out) {
    const BoundedFunction f = parse_function(fspec);
    const BVMultiplier g = parse_multiplier(gspec), h = parse_multiplier(hspec);
    const IdentityReport r = identity == 1 ? conv_identity_1(f, g, h, cfg.tol) : conv_identity_2(f, g, h, cfg.tol);
    json j{{"identity", identity},
           {"lhs", quad_json(r.lhs)},
           {"rhs", quad_json(r.rhs)},
           {"residual", r.residual},
           {"err_est", r.lhs.err_est + r.rhs.err_est}};
    if (identity == 2) {
        j["l1_estimate"] = r.l1_estimate;
        j["l1_bound"] = r.l1_bound;
        j["var_estimate"] = r.var_estimate;
        j["var_bound"] = r.var_bound;
    }
    j["passed"] = r.residual <= cfg.comparison_tol;
    out << j.dump(2) << '\n';
    return j["passed"].get<bool>() ? 0 : 1;
}

int run_verify(const RunConfig& cfg, const std::string& spec, const std::string& gspec, double excision,
               std::ostream& out) {
    const FunctionSpec fs = parse_spec(spec);
    const ClosedFormReport r = closed_form_report(fs.name, fs.params, parse_multiplier(gspec), cfg.tol, excision);
    const AtomicPlusDensity D = closed_form(fs.name, fs.params);
    json sing = json::array();
    for (const auto& s : D.singularities) sing.push_back({{"at", s.at}, {"kind", to_string(s.kind)}});
    json j{{"closed_form", quad_json(r.closed)},
           {"exchange", quad_json(r.exchange)},
           {"residual", r.residual},
           {"err_est", r.closed.err_est + r.exchange.err_est},
           {"singularities", sing},
           {"diagnostic", r.diagnostic}};
    if (excision > 0.0) j["excision"] = excision;
    const bool ok = r.diagnostic || r.residual <= cfg.comparison_tol;
    j["passed"] = ok;
    out << j.dump(2) << '\n';
    return ok ? 0 : 1;
}

int run_bessel(const RunConfig& cfg, const std::string& x_text, const std::string& out_fmt, std::ostream& out) {
    const std::vector<double> xs = parse_list(x_text);
    const std::string fmt = pick_format(cfg, out_fmt);
    json rows = json::array();
    if (fmt == "csv") out << "x,j0,j1,err_est\n";
    for (double x : xs) {
        const double j0 = bessel_j0(x), j1 = bessel_j1(x);
        const double err = std::max(bessel_error_estimate(0, x), bessel_error_estimate(1, x));
        if (fmt == "csv") {
            out << num(x) << ',' << num(j0) << ',' << num(j1) << ',' << num(err) << '\n';
        } else {
            rows.push_back({{"x", x}, {"j0", j0}, {"j1", j1}, {"err_est", err}});
        }
    }
    if (fmt == "json") out << rows.dump(2) << '\n';
    return 0;
}

int run_suite(const RunConfig& cfg, const std::string& only_text, const std::string& out_fmt, std::ostream& out) {
    std::vector<std::string> only;
    std::stringstream ss(only_text);
    for (std::string k; std::getline(ss, k, ',');) {
        if (!k.empty()) only.push_back(k);
    }
    const std::string fmt = out_fmt.empty() ? "text" : out_fmt;
    if (fmt != "text" && fmt != "json") throw ParameterError("suite --out must be text or json");
    const std::vector<CriterionResult> results = run_acceptance(cfg, only);
    bool all = true;
    json arr = json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        if (fmt == "text") {
            out << format_result(r) << '\n';
        } else {
            arr.push_back({{"id", r.id},
                           {"key", r.key},
                           {"title", r.title},
                           {"passed", r.passed},
                           {"seconds", r.seconds},
                           {"time_limit", r.time_limit},
                           {"detail", r.detail}});
        }
    }
    if (fmt == "json") out << json{{"criteria", arr}, {"passed", all}}.dump(2) << '\n';
    return all ? 0 : 1;
}

void error_record(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Distributional Fourier transforms of bounded functions", "bdft"};
    app.require_subcommand(1);
    Globals G;
    app.add_option("--config", G.config_path, "key=value config file (default: $BDFT_CONFIG)");
    app.add_option("--tol", G.tol, "quadrature tolerance");
    app.add_option("--comparison-tol", G.comparison_tol, "tolerance for identity checks");
    app.add_option("--budget", G.budget, "panel budget per integral");
    app.add_option("--seed", G.seed, "seed for quasi-random sampling");
    app.add_option("--format", G.format, "default output format (csv or json)");

    std::string f, g, h, grid, out_fmt, kernel = "gauss", a_text = "0.4,0.2,0.1", x_text, spec, only;
    bool both = false;
    int identity = 2;
    double excision = 0.0;

    auto* transform = app.add_subcommand("transform", "Psi, Omega, Phi and f1^ on a grid");
    transform->add_option("--f", f, "function spec, e.g. cos_recip:a=2")->required();
    transform->add_option("--grid", grid, "a:b:n")->required();
    transform->add_option("--out", out_fmt, "csv or json");

    auto* pair_cmd = app.add_subcommand("pair", "pairing <f^, g>");
    pair_cmd->add_option("--f", f)->required();
    pair_cmd->add_option("--g", g, "multiplier spec, e.g. gaussian:sigma=1")->required();
    pair_cmd->add_flag("--both-sides", both, "also evaluate int f g^ and the residual");

    auto* invert = app.add_subcommand("invert", "summability inversion sweep");
    invert->add_option("--f", f)->required();
    invert->add_option("--kernel", kernel, "fejer, poisson, gauss");
    invert->add_option("--a", a_text, "comma separated list of a");
    invert->add_option("--grid", grid, "a:b:n")->required();
    invert->add_option("--out", out_fmt, "csv or json");

    auto* convolve_cmd = app.add_subcommand("convolve", "weak convolution identities");
    convolve_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    convolve_cmd->add_option("--f", f)->required();
    convolve_cmd->add_option("--g", g)->required();
    convolve_cmd->add_option("--h", h)->required();
    convolve_cmd->add_option("--identity", identity)->check(CLI::IsMember({1, 2}));

    auto* verify = app.add_subcommand("verify", "closed-form transform against the exchange formula");
    verify->add_option("--closed-form", spec, "name:params")->required();
    verify->add_option("--g", g)->required();
    verify->add_option("--excision", excision, "excised half width at a non-integrable point");

    auto* bessel = app.add_subcommand("bessel", "J0 and J1");
    bessel->add_option("--x", x_text, "comma separated arguments")->required();
    bessel->add_option("--out", out_fmt, "csv or json");

    auto* suite = app.add_subcommand("suite", "acceptance criteria");
    suite->add_option("--only", only, "comma separated criterion keys");
    suite->add_option("--out", out_fmt, "text or json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        error_record(err, "argument", e.what());
        return 2;
    }

    const long saved_budget = default_budget();
    int code = 0;
    try {
        const RunConfig cfg = G.resolve();
        set_default_budget(cfg.panel_budget);
        if (transform->parsed()) code = run_transform(cfg, f, grid, out_fmt, out);
        else if (pair_cmd->parsed()) code = run_pair(cfg, f, g, both, out);
        else if (invert->parsed()) code = run_invert(cfg, f, kernel, a_text, grid, out_fmt, out);
        else if (convolve_cmd->parsed()) code = run_convolve(cfg, f, g, h, identity, out);
        else if (verify->parsed()) code = run_verify(cfg, spec, g, excision, out);
        else if (bessel->parsed()) code = run_bessel(cfg, x_text, out_fmt, out);
        else code = run_suite(cfg, only, out_fmt, out);
    } catch (const ParameterError& e) {
        error_record(err, "parameter", e.what());
        code = 2;
    } catch (const BudgetExceeded& e) {
        error_record(err, "budget", e.what());
        code = 1;
    } catch (const std::exception& e) {
        error_record(err, "runtime", e.what());
        code = 1;
    }
    set_default_budget(saved_budget);
    return code;
}

}  // namespace bdft
