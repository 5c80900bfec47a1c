#ifndef BDFT_CONVOLUTION_HPP
#define BDFT_CONVOLUTION_HPP

#include <string>

#include "bdft/pairing.hpp"

namespace bdft {

/// The weight t -> g(x - t).
Weight shifted_weight(const BVMultiplier& g, double x);

/// (f * g)(x) = int f(t) g(x - t) dt.
QuadResult convolve(const BoundedFunction& f, const BVMultiplier& g, double x, double tol = kDefaultTol);

/// f * g as a memoized BoundedFunction with sup bound ||f||_inf ||g||_1 and a
/// far-field carrier form inherited from f. Point values are computed to
/// `inner_tol`.
BoundedFunction convolve_function(const BoundedFunction& f, const BVMultiplier& g,
                                  double inner_tol = 1e-11);

/// G = g * h as a multiplier, tabulated with cubic Hermite interpolation.
/// h must be smooth (no jumps in dh) with its third derivative available.
struct ConvolvedMultiplier {
    BVMultiplier multiplier;
    double l1_estimate = 0.0;   // int |G| from the table
    double l1_bound = 0.0;      // ||g||_1 ||h||_1
    double var_estimate = 0.0;  // int |G''| from the table
    double var_bound = 0.0;     // ||g||_1 ||h''||_1
    double node_spacing = 0.0;
};
ConvolvedMultiplier convolve_multipliers(const BVMultiplier& g, const BVMultiplier& h,
                                         double node_spacing = 0.0125);

struct IdentityReport {
    QuadResult lhs;
    QuadResult rhs;
    double residual = 0.0;
    double l1_estimate = 0.0;
    double l1_bound = 0.0;
    double var_estimate = 0.0;
    double var_bound = 0.0;
};

/// int (f*g)^ h = int f^ g^ h, with g and h Gaussians. The right side is
/// int f(s) W(s) ds with W(s) = int g(t - s) h^(t) dt.
IdentityReport conv_identity_1(const BoundedFunction& f, const BVMultiplier& g, const BVMultiplier& h,
                               double tol = kDefaultTol);

/// int f^ (g*h) = int f g^ h^.
IdentityReport conv_identity_2(const BoundedFunction& f, const BVMultiplier& g, const BVMultiplier& h,
                               double tol = kDefaultTol);

}  // namespace bdft

#endif  // BDFT_CONVOLUTION_HPP
