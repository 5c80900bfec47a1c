#ifndef BDFT_INVERSION_HPP
#define BDFT_INVERSION_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bdft/pairing.hpp"

namespace bdft {

/// A summability kernel psi_a(t) = psi(t/a)/a with unit mass and transform
/// psihat_a(s) = int exp(-ist) psi_a(t) dt.
struct SummabilityKernel {
    std::string name;
    std::function<double(double a, double t)> psi_a;
    std::function<double(double a, double s)> psihat_a;
    /// psi = psi_1 and its first two derivatives.
    std::array<RealFn, 3> derivatives;
    bool satisfies_theorem = true;
    bool satisfies_corollary = false;

    /// s -> exp(ixs) psihat_a(s).
    BVMultiplier multiplier_of(double a, double x) const;
    /// t -> psi_a(x - t) as a quadrature weight.
    Weight convolution_weight(double a, double x) const;
};

/// fejer, poisson, gauss, dirichlet.
const SummabilityKernel& summability_kernel(const std::string& name);
const std::vector<std::string>& kernel_names();

/// I_a[f](x) = (1/2pi) <f^, exp(ix.) psihat_a>.
QuadResult invert_at(const DistributionalTransform& T, const SummabilityKernel& K, double a, double x,
                     double tol = kDefaultTol);
QuadResult invert_at(const BoundedFunction& f, const SummabilityKernel& K, double a, double x,
                     double tol = kDefaultTol);

/// (f * psi_a)(x) by direct quadrature.
QuadResult invert_direct(const BoundedFunction& f, const SummabilityKernel& K, double a, double x,
                         double tol = kDefaultTol);

struct SweepRow {
    double a = 0.0;
    double x = 0.0;
    QuadResult value;
    Complex reference{};
    double error = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::vector<double> a_list;
    std::vector<double> max_error;  // one entry per a
};

/// |f(x) - I_a[f](x)| over the grid for every a.
SweepTable inversion_sweep(const BoundedFunction& f, const SummabilityKernel& K,
                           const std::vector<double>& a_list, const std::vector<double>& grid,
                           double tol = kDefaultTol);

/// True when the sequence is non-increasing up to a relative jitter.
bool nonincreasing_with_jitter(const std::vector<double>& v, double jitter = 0.1);

struct MomentCheck {
    int order = 0;  // k in int |t^2 psi^(k)|
    bool finite = false;
    double value = 0.0;  // estimate when finite, partial sum otherwise
    std::vector<double> dyadic;  // int over 10*2^j < |t| < 10*2^(j+1)
};

struct HypothesisReport {
    std::string kernel;
    std::array<MomentCheck, 3> moments;
    bool all_finite() const {
        return moments[0].finite && moments[1].finite && moments[2].finite;
    }
};

/// Numerical check of int |t^2 psi^(k)| < inf for k = 0, 1, 2 at a = 1.
HypothesisReport corollary_hypotheses_check(const SummabilityKernel& K);

}  // namespace bdft

#endif  // BDFT_INVERSION_HPP
