#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <utility>

#include "wardowski/errors.hpp"

namespace wardowski {

/// Extended real value: a finite double or minus infinity.
///
/// This is the codomain of a Wardowski function, where -inf is required to
/// occur exactly at t = 0. It is a dedicated variant rather than a sentinel
/// double so that "F(t) = -inf iff t = 0" is an exact, testable statement.
/// NaN is rejected at construction, which makes the order total.
class ExtReal {
public:
    ExtReal(double v) : v_(v) {
        if (std::isnan(v)) throw InvalidParameter("ExtReal: NaN is not a value");
    }

    static ExtReal neg_inf() noexcept { return ExtReal(tag_neg_inf{}); }

    bool is_neg_inf() const noexcept { return neg_inf_; }
    bool is_finite() const noexcept { return !neg_inf_; }

    /// Value of a finite ExtReal. Throws on -inf.
    double finite_value() const {
        if (neg_inf_) throw PreconditionViolated("ExtReal: finite_value() of -inf");
        return v_;
    }

    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) noexcept {
        if (a.neg_inf_) return b.neg_inf_ ? std::strong_ordering::equal : std::strong_ordering::less;
        if (b.neg_inf_) return std::strong_ordering::greater;
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator==(const ExtReal& a, const ExtReal& b) noexcept {
        return (a <=> b) == std::strong_ordering::equal;
    }

    /// -inf absorbs any finite shift.
    friend ExtReal operator+(const ExtReal& x, double c) {
        return x.neg_inf_ ? x : ExtReal(x.v_ + c);
    }
    friend ExtReal operator-(const ExtReal& x, double c) { return x + (-c); }

private:
    struct tag_neg_inf {};
    explicit ExtReal(tag_neg_inf) noexcept : v_(0.0), neg_inf_(true) {}

    double v_;
    bool neg_inf_ = false;
};

/// Total-order comparison of extended reals.
inline std::strong_ordering ext_compare(const ExtReal& x, const ExtReal& y) noexcept {
    return x <=> y;
}

/// Absolute/relative stopping control for bracketing searches.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_bisection_steps = 200;

    void validate() const {
        if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
            throw InvalidParameter("Tolerance: abs_tol and rel_tol must be nonnegative");
        if (abs_tol == 0.0 && rel_tol == 0.0)
            throw InvalidParameter("Tolerance: abs_tol or rel_tol must be positive");
        if (max_bisection_steps < 1)
            throw InvalidParameter("Tolerance: max_bisection_steps must be positive");
    }
};

/// Result of a sublevel-set boundary search.
struct SupSearch {
    double value = 0.0;          // inner bracket endpoint; g(value) <= threshold held exactly
    int steps = 0;
    bool budget_exhausted = false;
    double bracket_width = 0.0;  // final enclosing width
};

/// Locates sup{ s in [lo,hi] : g(s) <= threshold } for nondecreasing g by
/// bisection. Bisection (rather than derivative-based inversion) is used
/// because g may jump; the sublevel boundary is still bracketed.
///
/// Returns the inner endpoint of the final bracket, so g(result) <= threshold
/// holds exactly as evaluated. Throws PreconditionViolated if g(lo) exceeds
/// the threshold. If the step budget runs out first, the best bracket endpoint
/// is returned with budget_exhausted set.
template <typename G>
SupSearch monotone_sup_below(G&& g, const ExtReal& threshold, double lo, double hi,
                             const Tolerance& tol = {}) {
    tol.validate();
    if (!(lo <= hi)) throw InvalidParameter("monotone_sup_below: requires lo <= hi");
    if (ext_compare(g(lo), threshold) == std::strong_ordering::greater)
        throw PreconditionViolated("monotone_sup_below: g(lo) > threshold");

    SupSearch out;
    if (ext_compare(g(hi), threshold) != std::strong_ordering::greater) {
        out.value = hi;
        return out;  // whole interval is in the sublevel set
    }

    double a = lo, b = hi;  // invariant: g(a) <= threshold < g(b)
    auto width_target = [&] { return std::max(tol.abs_tol, tol.rel_tol * std::max(std::fabs(a), std::fabs(b))); };
    while (b - a > width_target() && out.steps < tol.max_bisection_steps) {
        const double m = a + (b - a) / 2;
        if (m <= a || m >= b) break;  // bracket at machine resolution
        if (ext_compare(g(m), threshold) == std::strong_ordering::greater)
            b = m;
        else
            a = m;
        ++out.steps;
    }
    out.value = a;
    out.bracket_width = b - a;
    out.budget_exhausted = (b - a > width_target());
    return out;
}

} // namespace wardowski
