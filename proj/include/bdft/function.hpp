#ifndef BDFT_FUNCTION_HPP
#define BDFT_FUNCTION_HPP

#include <optional>
#include <string>
#include <vector>

#include "bdft/types.hpp"

namespace bdft {

/// One term of the far-field form f(t) = sum_k exp(i freq_k t) envelope_k(t).
struct CarrierTerm {
    double freq = 0.0;
    ComplexFn envelope;
    double bound = 0.0;  // sup of |envelope|
};

/// One term of the near-origin form f(t) = sum_j amplitude_j(t) exp(i freq_j / t),
/// valid for 0 < |t| <= 1. Amplitudes are piecewise smooth with the owner's
/// breakpoints.
struct ReciprocalMode {
    double freq = 0.0;
    ComplexFn amplitude;
    double bound = 0.0;
};

/// An essentially bounded, piecewise-smooth function on the real line.
///
/// Besides point evaluation it carries the structural metadata the quadrature
/// layer needs: a sup bound, breakpoints, a far-field carrier decomposition
/// (valid for |t| >= far_radius), optional breakpoint lattices inside the far
/// field, and an optional reciprocal-oscillation decomposition near t = 0.
/// Values are immutable; the `with_*` members return modified copies.
class BoundedFunction {
public:
    BoundedFunction() = default;
    BoundedFunction(ComplexFn eval, double sup_bound, std::vector<double> breakpoints,
                    std::string label);

    Complex operator()(double t) const { return eval_(t); }
    const ComplexFn& eval() const noexcept { return eval_; }

    double sup_bound() const noexcept { return sup_bound_; }
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    const std::string& label() const noexcept { return label_; }
    std::optional<double> decay_hint() const noexcept { return decay_hint_; }

    const std::vector<CarrierTerm>& far_field() const noexcept { return far_; }
    double far_radius() const noexcept { return far_radius_; }
    const std::vector<BreakLattice>& lattices() const noexcept { return lattices_; }
    const std::vector<ReciprocalMode>& reciprocal_modes() const noexcept { return near0_; }
    bool has_reciprocal_modes() const noexcept { return !near0_.empty(); }

    /// Frequencies at which Psi_f may fail to be smooth (the far-field carriers).
    std::vector<double> spectral_points() const;

    BoundedFunction with_far_field(std::vector<CarrierTerm> terms, double radius = 1.0) const;
    BoundedFunction with_lattice(BreakLattice lattice) const;
    BoundedFunction with_reciprocal_modes(std::vector<ReciprocalMode> modes) const;
    BoundedFunction with_decay_hint(double beta) const;
    BoundedFunction with_label(std::string label) const;

private:
    ComplexFn eval_;
    double sup_bound_ = 0.0;
    std::vector<double> breakpoints_;
    std::string label_;
    std::optional<double> decay_hint_;
    std::vector<CarrierTerm> far_;
    double far_radius_ = 1.0;
    std::vector<BreakLattice> lattices_;
    std::vector<ReciprocalMode> near0_;
};

/// f = f1 + f2 with f1 = f on [-1,1] and f2 = f off [-1,1].
struct SplitPair {
    BoundedFunction f1;
    BoundedFunction f2;
};

SplitPair split(const BoundedFunction& f);

/// Named catalog. `params` are positional; see catalog_parameters() for names
/// and defaults. Throws ParameterError on unknown names or invalid parameters.
BoundedFunction catalog(const std::string& name, const std::vector<double>& params = {});

struct ParamSpec {
    std::string key;
    double default_value;
};
/// Parameter names (in positional order) and defaults for a catalog entry.
const std::vector<ParamSpec>& catalog_parameters(const std::string& name);
const std::vector<std::string>& catalog_names();

struct FunctionSpec {
    std::string name;
    std::vector<double> params;  // every parameter, defaults filled in
};
/// Parses "name:key=value,..."; bare values are taken positionally.
FunctionSpec parse_spec(const std::string& text);
BoundedFunction parse_function(const std::string& spec);

/// User-supplied function; accuracy guarantees hold only between breakpoints.
BoundedFunction make_custom(ComplexFn eval, double sup_bound, std::vector<double> breakpoints,
                            std::string label = "custom");

/// f_{s,h}(x) = exp(isx)(1 - exp(ihx))/|1 - exp(ihx)|, and exp(isx) where exp(ihx) = 1.
BoundedFunction sharpness_witness(double s, double h);

BoundedFunction scale(const BoundedFunction& f, Complex c);
BoundedFunction add(const BoundedFunction& f, const BoundedFunction& g);

/// Largest |f| on a uniform grid of n points in [a, b]. Validation only.
double grid_sup(const BoundedFunction& f, double a, double b, int n);

}  // namespace bdft

#endif  // BDFT_FUNCTION_HPP
