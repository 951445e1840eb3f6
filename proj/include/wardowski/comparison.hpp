#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wardowski/numerics.hpp"
#include "wardowski/wardowski_function.hpp"

namespace wardowski {

/// Where a comparison function came from.
struct LinearProvenance {
    double alpha = 0.0;
};
struct DerivedProvenance {
    std::string source;  // originating F
    double a = 0.0;
    Tolerance tol;
    /// The self inequality a + F(phi(t)) <= F(t) is only certified when the
    /// source F is left-continuous.
    bool self_inequality_certified = false;
};
struct UserProvenance {};

using Provenance = std::variant<LinearProvenance, DerivedProvenance, UserProvenance>;

/// An increasing regressive map phi on the nonnegative reals.
struct ComparisonFunction {
    std::function<double(double)> eval;
    Provenance provenance = UserProvenance{};

    double operator()(double t) const { return eval(t); }
};

/// sup{ s >= 0 : a + F(s) <= F(t) }, located by bisection on [0, t]. The
/// bracket never extends past t because the sublevel set sits inside [0, t).
/// Returns the inner bracket endpoint, so a + F(result) <= F(t) holds exactly
/// as evaluated.
double derive_phi(const WardowskiFunction& F, double a, double t, const Tolerance& tol = {});

struct DerivePhiPoint {
    double t = 0.0;
    double phi = 0.0;
    bool budget_exhausted = false;
};
DerivePhiPoint derive_phi_detailed(const WardowskiFunction& F, double a, double t,
                                   const Tolerance& tol = {});

/// phi(t) = alpha t with alpha in (0,1).
ComparisonFunction linear_comparison(double alpha);

/// The comparison function associated with (a, F), evaluated on demand.
ComparisonFunction derived_comparison(const WardowskiFunction& F, double a,
                                      const Tolerance& tol = {});

/// Wraps an arbitrary user map (assumed increasing and regressive).
ComparisonFunction user_comparison(std::function<double(double)> fn);

/// n-th iterate, with phi^0(t) = t.
double iterate_phi(const ComparisonFunction& phi, double t, std::size_t n);

enum class MatkowskiStatus { Verified, Inconclusive };

struct MatkowskiVerdict {
    double t = 0.0;
    MatkowskiStatus status = MatkowskiStatus::Inconclusive;
    std::size_t steps_used = 0;
    /// First iterate index at which each ladder eps was cleared (ladder order).
    std::vector<std::optional<std::size_t>> eps_first_rank;
};

/// Per grid point: Verified when the iterates fall below every ladder eps
/// within n_cap steps, Inconclusive otherwise. Convergence to zero cannot be
/// finitely refuted for a regressive map, so there is no Refuted state.
std::vector<MatkowskiVerdict> check_matkowski(const ComparisonFunction& phi,
                                              std::span<const double> t_grid, std::size_t n_cap,
                                              std::span<const double> eps_ladder = kEpsLadder);

enum class SeriesStatus { Converged, Diverging, Inconclusive };

struct SeriesResult {
    double value = 0.0;          // partial sum of the recorded terms
    std::size_t truncated_at = 0;  // index of the last term summed
    double tail_estimate = 0.0;  // geometric tail when detected, else 0
    SeriesStatus status = SeriesStatus::Inconclusive;
};

/// Partial sums of Phi(t) = t + phi(t) + phi^2(t) + ...
///
/// Converged: an eventual geometric ratio r < 1 is detected and the running
/// term has fallen below tol.abs_tol * (1 - r); the tail estimate is
/// term * r / (1 - r). Diverging: the partial sum blows past 1e12 with
/// non-vanishing terms, or the terms stop decreasing (ratio >= 1 - 1e-9)
/// for 10^4 consecutive steps. Otherwise Inconclusive at the cap.
SeriesResult phi_series(const ComparisonFunction& phi, double t, const Tolerance& tol = {},
                        std::size_t n_cap = 1'000'000);

} // namespace wardowski
