#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wardowski/numerics.hpp"

namespace wardowski {

/// A function F: [0,inf) -> R u {-inf} together with its declared metadata.
///
/// The axioms it is meant to satisfy: F(0) = -inf and only there, monotone
/// increase (strict unless the strict flag is cleared), and F(t) -> -inf as
/// t -> 0+. Discontinuity points are declared by the constructor rather than
/// discovered, since numerical discovery is unreliable; lateral_limits
/// cross-checks the declarations.
struct WardowskiFunction {
    std::function<ExtReal(double)> eval;
    std::vector<double> discontinuities;  // sorted, positive
    bool left_continuous = true;
    bool strict = true;
    std::string name;

    ExtReal operator()(double t) const { return eval(t); }
};

/// F(t) = ln(alpha t^2 + beta t) + gamma t, the log-polynomial family.
WardowskiFunction make_log_poly(double alpha, double beta, double gamma);

/// F(t) = -t^(-delta), the negative-power family.
WardowskiFunction make_neg_power(double delta);

/// F(t) = ln t. The linear-comparison specialization: deriving phi from
/// (a, ln) gives phi(t) = e^(-a) t, the classical geometric contraction.
WardowskiFunction make_log();

/// F(t) = ln t for t < at, ln t + jump for t >= at. Strictly increasing but
/// not left-continuous at `at`; its declared discontinuity set is {at}.
WardowskiFunction make_step_log(double jump, double at);

/// One-sided limit estimates (F(t-0), F(t+0)) by geometric approach
/// t(1 -+ 2^-i), i = 1..52. For monotone F the estimates straddle F(t):
/// left <= F(t) <= right as evaluated. tol is the reporting tolerance the
/// estimates are expected to meet for continuous points.
std::pair<ExtReal, ExtReal> lateral_limits(const WardowskiFunction& F, double t,
                                           const Tolerance& tol = {});

/// Per-axiom desk check over a sampled grid.
struct AxiomReport {
    bool pole_pass = false;  // -inf exactly at 0
    std::optional<double> pole_witness;

    bool monotone_pass = false;  // strict or nondecreasing per F.strict
    std::optional<std::pair<double, double>> monotone_witness;

    bool descent_pass = false;  // unbounded descent toward 0+
    std::optional<double> descent_failed_bound;

    bool order_reflect_pass = false;  // F(t) < F(s) implies t < s on grid pairs
    std::optional<std::pair<double, double>> order_reflect_witness;

    bool all_pass() const { return pole_pass && monotone_pass && descent_pass && order_reflect_pass; }
};

/// The bound ladder used for the descent axiom.
inline constexpr double kDescentLadder[] = {-1e1, -1e2, -1e3, -1e4, -1e5, -1e6};

/// Checks the pole placement, monotonicity, unbounded descent and the
/// order-reflection property (F(t) < F(s) implies t < s) on the
/// given grid and decreasing zero sequence.
///
/// The descent check accepts a ladder bound either when a sample falls below
/// it or when the bound lies beyond the sampled range while the F values are
/// still strictly decreasing without stalling (log-family values cannot reach
/// -1e3 in double precision, yet descend at a steady rate; a function
/// leveling off, like ln(1+t), fails its first unreached bound). The first
/// ladder bound must always be reached by an actual sample.
AxiomReport check_axioms(const WardowskiFunction& F, std::span<const double> grid,
                         std::span<const double> zero_seq);

/// Status of the t^k F(t) -> 0 regularity probe.
enum class Regularity { Regular, NotRegular, Inconclusive };

struct RegularityVerdict {
    double k = 0.0;
    Regularity status = Regularity::Inconclusive;
    std::vector<std::pair<double, double>> evidence;  // (t, t^k F(t)) samples
};

/// Classifies whether t^k F(t) -> 0 along the given zero sequence.
/// Regular: |t^k F(t)| falls below every threshold in {1e-1..1e-6} and stays
/// there. NotRegular: the magnitude eventually grows monotonically.
RegularityVerdict classify_regularity(const WardowskiFunction& F, double k,
                                      std::span<const double> zero_seq);

struct VanishingResult {
    bool held = true;
    std::optional<double> failed_eps;       // eps level whose tail never cleared
    std::optional<std::size_t> witness_index;  // last index with t >= failed_eps
};

inline constexpr double kEpsLadder[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

/// Desk-scale check of "F(t_n) -> -inf implies t_n -> 0" on recorded samples
/// (t_n, F(t_n)). The premise holds when for every ladder bound B some tail
/// of the F values stays below B; the conclusion requires the t tail to fall
/// below every eps level. Vacuously true when the premise fails.
VanishingResult vanishing_check(std::span<const std::pair<double, ExtReal>> samples,
                          std::span<const double> bound_ladder = kDescentLadder,
                          std::span<const double> eps_ladder = kEpsLadder);

/// Convenience overload evaluating F itself along ts.
VanishingResult vanishing_check(const WardowskiFunction& F, std::span<const double> ts,
                          std::span<const double> bound_ladder = kDescentLadder,
                          std::span<const double> eps_ladder = kEpsLadder);

/// Logarithmic grid covering [lo, hi], ascending.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Default decreasing zero sequence 2^-k, k = 1..200.
std::vector<double> default_zero_seq();

} // namespace wardowski
