#ifndef BDFT_WEIGHTED_HPP
#define BDFT_WEIGHTED_HPP

#include <string>
#include <vector>

#include "bdft/function.hpp"
#include "bdft/quadrature.hpp"

namespace bdft {

/// One term exp(-i lambda t) amp(t) of a weight's far-field form.
/// For |t| >= far_radius: |amp(t)| <= bound / t^2 and |amp(t)| <= sup.
struct WeightTerm {
    double lambda = 0.0;
    ComplexFn amp;
    double bound = 0.0;
    double sup = 0.0;
};

/// A kernel k(t) integrated against a BoundedFunction.
///
/// `full` must be accurate everywhere. `far` decomposes k into carriers for
/// |t| >= far_radius; far_radius = 0 means the decomposition holds on the
/// whole line with bounded, smooth amplitudes.
struct Weight {
    ComplexFn full;
    std::vector<WeightTerm> far;
    double far_radius = 1.0;
    double near_sup = 0.0;  // sup |k| on [-1, 1]
    double max_freq = 0.0;  // oscillation rate of `full`, used for panel sizing
    std::vector<double> breakpoints;
    std::string label;
};

enum class Region { Near, Outer, All };

/// int f(t) k(t) dt over [-1,1] (Near), |t| > 1 (Outer) or the whole line.
QuadResult integrate_against(const BoundedFunction& f, const Weight& w, Region region,
                             double tol = kDefaultTol, long budget = 0);

Weight scale(const Weight& w, Complex c);

/// Pointwise product of two weights (far amplitudes multiply, frequencies add).
Weight multiply(const Weight& a, const Weight& b);

}  // namespace bdft

#endif  // BDFT_WEIGHTED_HPP
