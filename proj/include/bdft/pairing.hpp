#ifndef BDFT_PAIRING_HPP
#define BDFT_PAIRING_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bdft/transform.hpp"

namespace bdft {

/// Admissible test function g for the pairing: absolutely continuous and
/// integrable, with h = g' right-continuous of bounded variation.
struct BVMultiplier {
    std::string label;
    ComplexFn g;
    ComplexFn h;
    BVDecomposition dh;
    ComplexFn d3;  // g''' where g is smooth; empty otherwise
    double g_l1 = 0.0;
    double g_sup = 0.0;
    double g_support = kInf;
    RealFn g_tail;          // bound on int_{|s|>r} |g| when g_support is infinite
    double moment2_sup = 0.0;  // sup s^2 |g(s)|
    std::vector<double> breakpoints;
    std::optional<Weight> ghat_analytic;
    bool real_valued = false;
    /// (sigma, center) when g is exp(-(s - center)^2 / (2 sigma^2)).
    std::optional<std::pair<double, double>> gaussian_shape;

    /// Radius beyond which int |g| * F_bound <= share.
    double effective_radius(double F_bound, double share) const;
};

/// gaussian(sigma, center), odd_gaussian(sigma), triangle(width),
/// fejer(a, x), poisson(a, x), gauss(a, x). The last three are the kernel
/// multipliers s -> exp(ixs) psi^_a(s).
BVMultiplier multiplier_catalog(const std::string& name, const std::vector<double>& params = {});
const std::vector<std::string>& multiplier_names();
/// "name:key=value,..." as for functions.
BVMultiplier parse_multiplier(const std::string& spec);

/// Sum of two multipliers (dh measures add; var is bounded by the sum).
BVMultiplier add(const BVMultiplier& a, const BVMultiplier& b);

/// Rejects multipliers violating the admissibility conditions.
void validate(const BVMultiplier& m);

/// <f2^, g> = -int Psi_f dh.
QuadResult pair_f2(const DistributionalTransform& T, const BVMultiplier& m, double tol = kDefaultTol);
/// int f1^(s) g(s) ds.
QuadResult pair_f1(const DistributionalTransform& T, const BVMultiplier& m, double tol = kDefaultTol);
/// <f^, g> = <f1^, g> + <f2^, g>.
QuadResult pair(const DistributionalTransform& T, const BVMultiplier& m, double tol = kDefaultTol);
QuadResult pair(const BoundedFunction& f, const BVMultiplier& m, double tol = kDefaultTol);

/// g^(s) = -(1/s^2) int exp(-ist) dh(t); direct quadrature for |s| < 1e-3.
QuadResult ghat(const BVMultiplier& m, double s, double tol = kDefaultTol);

/// The transform of g as a quadrature weight: the analytic form when known,
/// otherwise built from the Stieltjes representation.
Weight ghat_weight(const BVMultiplier& m, double tol = kDefaultTol);

/// <f, g^> = int f(t) g^(t) dt.
QuadResult exchange_rhs(const BoundedFunction& f, const BVMultiplier& m, double tol = kDefaultTol);

struct ExchangeReport {
    QuadResult lhs;
    QuadResult rhs;
    double residual = 0.0;
    double bound = 0.0;
};
ExchangeReport exchange_report(const BoundedFunction& f, const BVMultiplier& m, double tol = kDefaultTol);
double exchange_residual(const BoundedFunction& f, const BVMultiplier& m, double tol = kDefaultTol);

/// 2 ||f||_inf (||g||_1 + var h).
double pairing_bound(const BoundedFunction& f, const BVMultiplier& m);

}  // namespace bdft

#endif  // BDFT_PAIRING_HPP
