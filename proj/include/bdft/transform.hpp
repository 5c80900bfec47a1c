#ifndef BDFT_TRANSFORM_HPP
#define BDFT_TRANSFORM_HPP

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "bdft/function.hpp"
#include "bdft/quadrature.hpp"
#include "bdft/weighted.hpp"

namespace bdft {

/// exp(-i s t) / t^2 on |t| > 1.
Weight psi_weight(double s);
/// exp(-i s t) on [-1, 1].
Weight f1_weight(double s);
/// v_s(t) = (1 - i s t - exp(-i s t)) / t^2 with v_s(0) = s^2/2.
Weight omega_weight(double s);
Complex omega_kernel(double s, double t);

/// Psi_f(s) = int_{|t|>1} exp(-ist) f(t) dt / t^2.
QuadResult psi(const BoundedFunction& f, double s, double tol = kDefaultTol);
/// int_{-1}^{1} exp(-ist) f(t) dt.
QuadResult f1_hat(const BoundedFunction& f, double s, double tol = kDefaultTol);
/// int_{-1}^{1} v_s(t) f(t) dt.
QuadResult omega(const BoundedFunction& f, double s, double tol = kDefaultTol);
/// omega - psi.
QuadResult phi(const BoundedFunction& f, double s, double tol = kDefaultTol);

/// The distribution f^ = f1^ - Psi_f'' of a bounded function, with memoized
/// grid evaluations. Thread-safe; cached values are write-once.
class DistributionalTransform {
public:
    explicit DistributionalTransform(BoundedFunction f);

    const BoundedFunction& source() const noexcept { return f_; }
    double transform_norm() const noexcept { return f_.sup_bound(); }

    QuadResult psi(double s, double tol = kDefaultTol) const;
    QuadResult f1_hat(double s, double tol = kDefaultTol) const;
    QuadResult omega(double s, double tol = kDefaultTol) const;
    QuadResult phi(double s, double tol = kDefaultTol) const;

    std::size_t cache_size() const;

private:
    using Key = std::pair<double, double>;
    using Table = std::map<Key, QuadResult>;
    struct Cache {
        mutable std::mutex mu;
        Table psi, f1, omega;
    };

    template <class Fn>
    QuadResult lookup(Table Cache::*table, double s, double tol, Fn&& compute) const;

    BoundedFunction f_;
    std::shared_ptr<Cache> cache_;
};

/// Rounds to 12 significant digits (the cache key resolution).
double round12(double x);

/// |Psi(s+h) - Psi(s)| / (sup|f| |h| |log|h||). Quadrature tolerance is
/// rel_tol times the normalizer. Requires 0 < |h| < 1/e.
double holder_ratio(const BoundedFunction& f, double s, double h, double rel_tol = 1e-4);

/// |(Omega(s+d) - 2 Omega(s) + Omega(s-d)) / d^2 - f1^(s)|, d in [1e-5, 1e-2].
double omega_second_derivative_check(const BoundedFunction& f, double s, double delta,
                                     double tol = 1e-12);

/// |Omega_sgn(s)| / (2 s log s) for s >= 10.
double omega_growth_ratio(double s);

/// Bound ||F||_1 for F = f chi_{|t|>1} / t^2, i.e. 2 sup|f|.
inline double psi_norm_bound(const BoundedFunction& f) { return 2.0 * f.sup_bound(); }

}  // namespace bdft

#endif  // BDFT_TRANSFORM_HPP
