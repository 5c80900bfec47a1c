#include "bdft/function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace bdft {

namespace {

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

std::string fmt_label(const std::string& name, const std::vector<ParamSpec>& spec,
                      const std::vector<double>& p) {
    std::ostringstream os;
    os << name;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        os << (i == 0 ? ":" : ",") << spec[i].key << "=" << p[i];
    }
    return os.str();
}

const std::map<std::string, std::vector<ParamSpec>>& param_table() {
    static const std::map<std::string, std::vector<ParamSpec>> table = {
        {"const", {{"c", 1.0}}},
        {"indicator", {{"lo", -1.0}, {"hi", 1.0}}},
        {"sgn", {}},
        {"expwave", {{"x", 0.0}}},
        {"cos_recip", {{"a", 1.0}}},
        {"cos_recip_pow", {{"m", 2.0}, {"a", 1.0}}},
        {"exp_i_recip", {{"a", 1.0}}},
        {"x_sin_recip", {{"a", 1.0}}},
        {"atan_over", {{"a", 1.0}}},
        {"atan_recip", {{"a", 1.0}}},
        {"gaussian", {{"sigma", 1.0}, {"center", 0.0}}},
        {"sharpness", {{"s", 0.0}, {"h", 1e-2}}},
        {"custom", {}},
    };
    return table;
}

}  // namespace

BoundedFunction::BoundedFunction(ComplexFn eval, double sup_bound, std::vector<double> breakpoints,
                                 std::string label)
    : eval_(std::move(eval)),
      sup_bound_(sup_bound),
      breakpoints_(sorted_unique(std::move(breakpoints))),
      label_(std::move(label)) {
    if (!(sup_bound_ >= 0.0) || !std::isfinite(sup_bound_)) {
        throw ParameterError("sup_bound must be finite and non-negative");
    }
    far_ = {CarrierTerm{0.0, eval_, sup_bound_}};
}

std::vector<double> BoundedFunction::spectral_points() const {
    std::vector<double> pts;
    for (const auto& term : far_) pts.push_back(term.freq);
    return sorted_unique(std::move(pts));
}

BoundedFunction BoundedFunction::with_far_field(std::vector<CarrierTerm> terms, double radius) const {
    BoundedFunction r = *this;
    r.far_ = std::move(terms);
    r.far_radius_ = std::max(radius, 1.0);
    return r;
}

BoundedFunction BoundedFunction::with_lattice(BreakLattice lattice) const {
    if (!(lattice.spacing > 0.0)) throw ParameterError("lattice spacing must be positive");
    BoundedFunction r = *this;
    r.lattices_.push_back(lattice);
    return r;
}

BoundedFunction BoundedFunction::with_reciprocal_modes(std::vector<ReciprocalMode> modes) const {
    BoundedFunction r = *this;
    r.near0_ = std::move(modes);
    return r;
}

BoundedFunction BoundedFunction::with_decay_hint(double beta) const {
    BoundedFunction r = *this;
    r.decay_hint_ = beta;
    return r;
}

BoundedFunction BoundedFunction::with_label(std::string label) const {
    BoundedFunction r = *this;
    r.label_ = std::move(label);
    return r;
}

SplitPair split(const BoundedFunction& f) {
    const ComplexFn& fe = f.eval();

    std::vector<double> inner{-1.0, 1.0}, outer{-1.0, 1.0};
    for (double b : f.breakpoints()) {
        (std::abs(b) < 1.0 ? inner : outer).push_back(b);
    }

    BoundedFunction f1([fe](double t) { return std::abs(t) <= 1.0 ? fe(t) : Complex{}; },
                       f.sup_bound(), inner, f.label() + "|f1");
    f1 = f1.with_far_field({}).with_reciprocal_modes(f.reciprocal_modes());

    BoundedFunction f2([fe](double t) { return std::abs(t) > 1.0 ? fe(t) : Complex{}; },
                       f.sup_bound(), outer, f.label() + "|f2");
    f2 = f2.with_far_field(f.far_field(), f.far_radius());
    for (const auto& lat : f.lattices()) f2 = f2.with_lattice(lat);
    return {std::move(f1), std::move(f2)};
}

const std::vector<ParamSpec>& catalog_parameters(const std::string& name) {
    const auto& table = param_table();
    auto it = table.find(name);
    if (it == table.end()) throw ParameterError("unknown function name: " + name);
    return it->second;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : param_table()) v.push_back(k);
        return v;
    }();
    return names;
}

BoundedFunction catalog(const std::string& name, const std::vector<double>& params) {
    const auto& spec = catalog_parameters(name);
    if (name == "custom") {
        throw ParameterError("custom functions need an evaluation handle; use make_custom");
    }
    require(params.size() <= spec.size(), "too many parameters for " + name);
    std::vector<double> p;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        p.push_back(i < params.size() ? params[i] : spec[i].default_value);
        require(std::isfinite(p.back()), "non-finite parameter for " + name);
    }
    const std::string label = fmt_label(name, spec, p);

    if (name == "const") {
        const double c = p[0];
        return BoundedFunction([c](double) { return Complex{c}; }, std::abs(c), {}, label);
    }
    if (name == "indicator") {
        const double lo = p[0], hi = p[1];
        require(lo < hi, "indicator needs lo < hi");
        return BoundedFunction(
            [lo, hi](double t) { return Complex{(t >= lo && t <= hi) ? 1.0 : 0.0}; }, 1.0,
            {lo, hi}, label);
    }
    if (name == "sgn") {
        return BoundedFunction(
            [](double t) { return Complex{t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0)}; }, 1.0, {0.0},
            label);
    }
    if (name == "expwave") {
        const double x = p[0];
        BoundedFunction f([x](double t) { return std::polar(1.0, x * t); }, 1.0, {}, label);
        return f.with_far_field({{x, [](double) { return Complex{1.0}; }, 1.0}});
    }
    if (name == "cos_recip") {
        const double a = p[0];
        require(a != 0.0, "cos_recip needs a != 0");
        BoundedFunction f([a](double t) { return Complex{t == 0.0 ? 0.0 : std::cos(a / t)}; }, 1.0,
                          {0.0}, label);
        auto half = [](double) { return Complex{0.5}; };
        return f.with_reciprocal_modes({{a, half, 0.5}, {-a, half, 0.5}});
    }
    if (name == "cos_recip_pow") {
        const double a = p[1];
        const int m = static_cast<int>(std::lround(p[0]));
        require(static_cast<double>(m) == p[0] && m >= 1 && m <= 8,
                "cos_recip_pow needs integer m in 1..8");
        require(a != 0.0, "cos_recip_pow needs a != 0");
        BoundedFunction f(
            [a, m](double t) { return Complex{t == 0.0 ? 0.0 : std::pow(std::cos(a / t), m)}; },
            1.0, {0.0}, label);
        std::vector<ReciprocalMode> modes;
        for (int j = 0; j <= m; ++j) {
            // cos^m(y) = 2^-m sum_j C(m, j) exp(i (m - 2j) y)
            const double w = binomial(m, j) / std::ldexp(1.0, m);
            modes.push_back({(m - 2 * j) * a, [w](double) { return Complex{w}; }, w});
        }
        return f.with_reciprocal_modes(std::move(modes));
    }
    if (name == "exp_i_recip") {
        const double a = p[0];
        require(a != 0.0, "exp_i_recip needs a != 0");
        BoundedFunction f([a](double t) { return t == 0.0 ? Complex{} : std::polar(1.0, a / t); },
                          1.0, {0.0}, label);
        return f.with_reciprocal_modes({{a, [](double) { return Complex{1.0}; }, 1.0}});
    }
    if (name == "x_sin_recip") {
        const double a = p[0];
        require(a != 0.0, "x_sin_recip needs a != 0");
        BoundedFunction f([a](double t) { return Complex{t == 0.0 ? 0.0 : t * std::sin(a / t)}; },
                          std::abs(a), {0.0}, label);
        // t sin(a/t) = (t/2i) e^{ia/t} - (t/2i) e^{-ia/t}
        const Complex k = 1.0 / Complex{0.0, 2.0};
        return f.with_reciprocal_modes({{a, [k](double t) { return k * t; }, 0.5},
                                        {-a, [k](double t) { return -k * t; }, 0.5}});
    }
    if (name == "atan_over") {
        const double a = p[0];
        require(a != 0.0, "atan_over needs a != 0");
        return BoundedFunction([a](double t) { return Complex{std::atan(t / a)}; }, kPi / 2, {},
                               label);
    }
    if (name == "atan_recip") {
        const double a = p[0];
        require(a != 0.0, "atan_recip needs a != 0");
        return BoundedFunction([a](double t) { return Complex{t == 0.0 ? 0.0 : std::atan(a / t)}; },
                               kPi / 2, {0.0}, label);
    }
    if (name == "gaussian") {
        const double sigma = p[0], c = p[1];
        require(sigma > 0.0, "gaussian needs sigma > 0");
        return BoundedFunction(
            [sigma, c](double t) {
                const double z = (t - c) / sigma;
                return Complex{std::exp(-0.5 * z * z)};
            },
            1.0, {}, label);
    }
    if (name == "sharpness") {
        require(p[1] != 0.0, "sharpness needs h != 0");
        return sharpness_witness(p[0], p[1]).with_label(label);
    }
    throw ParameterError("unknown function name: " + name);
}

FunctionSpec parse_spec(const std::string& text) {
    const auto colon = text.find(':');
    FunctionSpec out{text.substr(0, colon), {}};
    const auto& spec = catalog_parameters(out.name);
    for (const auto& s : spec) out.params.push_back(s.default_value);
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
                auto it = std::find_if(spec.begin(), spec.end(),
                                       [&](const ParamSpec& p) { return p.key == key; });
                if (it == spec.end()) {
                    throw ParameterError("unknown parameter '" + key + "' for " + out.name);
                }
                idx = static_cast<std::size_t>(it - spec.begin());
            }
            if (idx >= spec.size()) throw ParameterError("too many parameters for " + out.name);
            try {
                std::size_t used = 0;
                out.params[idx] = std::stod(value, &used);
                if (used != value.size()) throw std::invalid_argument(value);
            } catch (const std::exception&) {
                throw ParameterError("bad numeric value '" + value + "' in " + text);
            }
        }
    }
    return out;
}

BoundedFunction parse_function(const std::string& text) {
    const FunctionSpec spec = parse_spec(text);
    return catalog(spec.name, spec.params);
}

BoundedFunction make_custom(ComplexFn eval, double sup_bound, std::vector<double> breakpoints,
                            std::string label) {
    if (!eval) throw ParameterError("custom function needs an evaluation handle");
    return BoundedFunction(std::move(eval), sup_bound, std::move(breakpoints), std::move(label));
}

BoundedFunction sharpness_witness(double s, double h) {
    if (h == 0.0 || !std::isfinite(h) || !std::isfinite(s)) {
        throw ParameterError("sharpness witness needs finite s and h != 0");
    }
    // (1 - e^{ihx})/|1 - e^{ihx}| = -i sgn(sin(hx/2)) e^{ihx/2}
    auto envelope = [h](double x) {
        const double sn = std::sin(0.5 * h * x);
        if (sn == 0.0) return std::polar(1.0, -0.5 * h * x);
        return Complex{0.0, sn > 0.0 ? -1.0 : 1.0};
    };
    const double carrier = s + 0.5 * h;
    BoundedFunction f([envelope, carrier](double x) { return std::polar(1.0, carrier * x) * envelope(x); },
                      1.0, {0.0}, "sharpness");
    return f.with_far_field({{carrier, envelope, 1.0}})
        .with_lattice({0.0, 2.0 * kPi / std::abs(h)});
}

BoundedFunction scale(const BoundedFunction& f, Complex c) {
    const ComplexFn fe = f.eval();
    BoundedFunction r([fe, c](double t) { return c * fe(t); }, std::abs(c) * f.sup_bound(),
                      f.breakpoints(), "scale(" + f.label() + ")");
    std::vector<CarrierTerm> far;
    for (const auto& term : f.far_field()) {
        const ComplexFn env = term.envelope;
        far.push_back({term.freq, [env, c](double t) { return c * env(t); }, std::abs(c) * term.bound});
    }
    std::vector<ReciprocalMode> modes;
    for (const auto& m : f.reciprocal_modes()) {
        const ComplexFn amp = m.amplitude;
        modes.push_back({m.freq, [amp, c](double t) { return c * amp(t); }, std::abs(c) * m.bound});
    }
    r = r.with_far_field(std::move(far), f.far_radius()).with_reciprocal_modes(std::move(modes));
    for (const auto& lat : f.lattices()) r = r.with_lattice(lat);
    return r;
}

BoundedFunction add(const BoundedFunction& f, const BoundedFunction& g) {
    const ComplexFn fe = f.eval(), ge = g.eval();
    std::vector<double> breaks = f.breakpoints();
    breaks.insert(breaks.end(), g.breakpoints().begin(), g.breakpoints().end());
    BoundedFunction r([fe, ge](double t) { return fe(t) + ge(t); }, f.sup_bound() + g.sup_bound(),
                      std::move(breaks), f.label() + "+" + g.label());

    std::vector<CarrierTerm> far = f.far_field();
    far.insert(far.end(), g.far_field().begin(), g.far_field().end());
    r = r.with_far_field(std::move(far), std::max(f.far_radius(), g.far_radius()));

    if (f.has_reciprocal_modes() || g.has_reciprocal_modes()) {
        auto modes_of = [](const BoundedFunction& h) {
            if (h.has_reciprocal_modes()) return h.reciprocal_modes();
            return std::vector<ReciprocalMode>{{0.0, h.eval(), h.sup_bound()}};
        };
        auto modes = modes_of(f);
        auto more = modes_of(g);
        modes.insert(modes.end(), more.begin(), more.end());
        r = r.with_reciprocal_modes(std::move(modes));
    }
    for (const auto& lat : f.lattices()) r = r.with_lattice(lat);
    for (const auto& lat : g.lattices()) r = r.with_lattice(lat);
    return r;
}

double grid_sup(const BoundedFunction& f, double a, double b, int n) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? a : a + (b - a) * i / (n - 1);
        m = std::max(m, std::abs(f(t)));
    }
    return m;
}

}  // namespace bdft
