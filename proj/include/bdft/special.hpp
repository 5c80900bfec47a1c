#ifndef BDFT_SPECIAL_HPP
#define BDFT_SPECIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "bdft/pairing.hpp"

namespace bdft {

/// Bessel functions of the first kind, |x| <= 1e4. Power series for
/// |x| <= 12, Hankel asymptotic expansion beyond.
double bessel_j0(double x);
double bessel_j1(double x);

/// The two branches, exposed for overlap checks.
double bessel_series(int n, double x);
double bessel_asymptotic(int n, double x);

/// Error estimate for bessel_j0/j1 at x: rounding for the series, the
/// smallest retained term for the asymptotic branch.
double bessel_error_estimate(int n, double x);

enum class SingularityKind { Removable, PrincipalValue, Jump, NonIntegrable };
const char* to_string(SingularityKind kind);

struct Singularity {
    double at = 0.0;
    SingularityKind kind = SingularityKind::Removable;
    Complex left_limit{};   // one-sided limits of the density, when finite
    Complex right_limit{};
};

struct Atom {
    double at = 0.0;
    Complex weight{};
};

/// Finite sum of point masses plus a density with flagged singular points.
struct AtomicPlusDensity {
    std::string label;
    std::vector<Atom> atoms;
    ComplexFn density;  // empty when there is none
    std::vector<Singularity> singularities;
    double density_bound = 0.0;  // sup |density| on |s| >= 1
    std::optional<double> decay_hint;
    bool diagnostic = false;
};

/// Transform of the catalog function `name` in closed form.
AtomicPlusDensity closed_form(const std::string& name, const std::vector<double>& params = {});
const std::vector<std::string>& closed_form_names();

/// sum w_j g(x_j) + int density g. Principal values are taken by folding
/// s and -s together; non-integrable points are excised on (-eps, eps).
QuadResult pair_closed_form(const AtomicPlusDensity& D, const BVMultiplier& m, double tol = kDefaultTol,
                            double excision = 0.0);

struct ClosedFormReport {
    QuadResult closed;
    QuadResult exchange;
    double residual = 0.0;
    bool diagnostic = false;
};

/// |pair_closed_form(closed_form(name)) - exchange_rhs(catalog(name))|.
ClosedFormReport closed_form_report(const std::string& name, const std::vector<double>& params,
                                    const BVMultiplier& m, double tol = kDefaultTol, double excision = 0.0);
double closed_form_residual(const std::string& name, const std::vector<double>& params, const BVMultiplier& m,
                            double tol = kDefaultTol);

struct SumRule {
    QuadResult integral;  // int (cos(a/t) - 1) dt
    Complex density_limit{};
    double residual = 0.0;
};
/// int (cos(a/t) - 1) dt against the density limit of the cos(a/t) transform.
SumRule cos_recip_sum_rule(double a, double tol = 1e-8);

}  // namespace bdft

#endif  // BDFT_SPECIAL_HPP
