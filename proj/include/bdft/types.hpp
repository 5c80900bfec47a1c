#ifndef BDFT_TYPES_HPP
#define BDFT_TYPES_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace bdft {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(double)>;
using RealFn = std::function<double(double)>;

inline constexpr double kPi = 3.14159265358979323846;

/// Infinite family of breakpoints offset + k*spacing, k ranging over the integers.
struct BreakLattice {
    double offset = 0.0;
    double spacing = 1.0;
};

/// Result of a numerical integral. `err_est` is an estimated absolute error
/// that already includes any analytic truncation remainder.
struct QuadResult {
    Complex value{};
    double err_est = 0.0;
    long panels = 1;
    long evaluations = 0;

    QuadResult& operator+=(const QuadResult& other) {
        value += other.value;
        err_est += other.err_est;
        panels += other.panels;
        evaluations += other.evaluations;
        return *this;
    }
    QuadResult& operator-=(const QuadResult& other) {
        value -= other.value;
        err_est += other.err_est;
        panels += other.panels;
        evaluations += other.evaluations;
        return *this;
    }
    friend QuadResult operator+(QuadResult a, const QuadResult& b) { return a += b; }
    friend QuadResult operator-(QuadResult a, const QuadResult& b) { return a -= b; }

    /// Scales value and error together.
    QuadResult scaled(Complex c) const {
        QuadResult r = *this;
        r.value *= c;
        r.err_est *= std::abs(c);
        return r;
    }
};

/// Invalid argument to a library operation (bad parameter, unmet precondition).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An adaptive integral ran out of its evaluation budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, QuadResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadResult& best() const noexcept { return best_; }

private:
    QuadResult best_;
};

}  // namespace bdft

#endif  // BDFT_TYPES_HPP
