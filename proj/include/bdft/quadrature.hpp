#ifndef BDFT_QUADRATURE_HPP
#define BDFT_QUADRATURE_HPP

#include <array>
#include <limits>
#include <vector>

#include "bdft/types.hpp"

namespace bdft {

inline constexpr double kDefaultTol = 1e-8;
inline constexpr long kDefaultBudget = 2'000'000;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Process-wide evaluation budget used when a call does not pass one.
long default_budget();
void set_default_budget(long budget);

/// Adaptive 7/15-point Gauss-Kronrod on [a, b]. Panels never straddle a
/// breakpoint and are no wider than max_panel initially.
QuadResult integrate_smooth(const ComplexFn& f, double a, double b,
                            const std::vector<double>& breakpoints = {}, double tol = kDefaultTol,
                            double max_panel = kInf, long budget = 0);

/// Moments m_k = int_{-1}^{1} u^k exp(-i kappa u) du for k = 0..n (n <= 12).
std::vector<Complex> monomial_moments(double kappa, int n);

/// int_a^b p(t) exp(-i s t) dt for p(t) = sum_k coeffs[k] t^k, degree <= 12.
Complex oscillatory_panel_moment(const std::vector<Complex>& coeffs, double s, double a, double b);

/// Adaptive Filon rule for int w(t) exp(-i nu t) dt over the panels of
/// `partition` (sorted endpoints). w is interpolated per panel; the
/// oscillatory factor is integrated exactly.
QuadResult integrate_filon(const ComplexFn& w, double nu, const std::vector<double>& partition,
                           double tol = kDefaultTol, long budget = 0);

/// One term exp(-i nu t) amp(t) of a tail integrand, with |amp(t)| <= bound/|t|^beta.
struct TailTerm {
    double nu = 0.0;
    ComplexFn amp;
    double bound = 0.0;
};

struct TailSpec {
    std::vector<TailTerm> terms;
    double r0 = 1.0;
    double beta = 2.0;
    std::vector<double> breakpoints;
    std::vector<BreakLattice> lattices;
};

/// Cutoff T for which the two-sided truncation remainder is <= share.
double tail_cutoff(double total_bound, double beta, double r0, double share);

/// int_{|t| > r0} sum_k exp(-i nu_k t) amp_k(t) dt. Geometric panels up to a
/// cutoff derived from the decay bounds; the analytic remainder is added to
/// err_est.
QuadResult integrate_tail(const TailSpec& spec, double tol = kDefaultTol, long budget = 0);

/// int_{|t| > 1} exp(-i s t) w(t) dt given |w(t)| <= C/|t|^beta.
QuadResult integrate_oscillatory_tail(const ComplexFn& w, double s, double tol, double beta,
                                      double C);

struct Jump {
    double at = 0.0;
    Complex size{};
};

/// Measure dh of a right-continuous BV function: density plus point masses.
/// Outside support_radius nothing is left; when the support is unbounded,
/// tail_mass(r) bounds the total variation carried by |t| > r.
struct BVDecomposition {
    ComplexFn density;
    std::vector<double> density_breaks;
    std::vector<Jump> jumps;
    double total_variation = 0.0;
    double support_radius = kInf;
    RealFn tail_mass;

    /// Smallest convenient radius r with F_bound * tail_mass(r) <= share.
    double effective_radius(double F_bound, double share) const;
};

struct StieltjesOptions {
    double F_bound = kInf;  // sup |F|, needed only for unbounded support
    std::vector<double> breakpoints;
    double max_panel = 1.0;
    long budget = 0;
};

/// int F dh = int F * density + sum F(t_j) * jump_j.
QuadResult integrate_stieltjes(const ComplexFn& F, const BVDecomposition& dh, double tol,
                               const StieltjesOptions& opts = {});

/// Breakpoints at the multiples of `step` inside (-R, R), merged with `extra`.
std::vector<double> aligned_breaks(double R, double step, const std::vector<double>& extra);

/// int_r^inf y^k exp(-y^2 / (2 sigma^2)) dy for r >= 0.
double gaussian_moment_tail(int k, double sigma, double r);

/// sup over |t| >= r of |t|^p exp(-(t - c)^2 / (2 sigma^2)).
double gaussian_power_sup(double p, double c, double sigma, double r);

}  // namespace bdft

#endif  // BDFT_QUADRATURE_HPP
