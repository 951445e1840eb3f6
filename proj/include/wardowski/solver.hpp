#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wardowski/comparison.hpp"
#include "wardowski/metric.hpp"
#include "wardowski/wardowski_function.hpp"

namespace wardowski {

/// A self-map of a metric space, applied pointwise.
template <typename P>
struct SelfMap {
    std::function<P(const P&)> apply;
    std::string name;

    P operator()(const P& x) const { return apply(x); }
};

enum class RunStatus { FixedPointHit, Converged, BudgetExhausted, DivergenceSuspected };

std::string to_string(RunStatus s);

/// A-posteriori residual bound d(x, z) <= Phi(d(x, Tx)).
struct HyersUlamCertificate {
    double residual = 0.0;  // d(x, Tx) the bound was evaluated at
    double bound = 0.0;
};

/// A-priori polynomial tail bound rho_n <= (beta / (a n))^(1/k) from a rank on.
struct TailBoundCertificate {
    double k = 0.0;
    double beta = 0.0;
    double a = 0.0;
    std::size_t from_rank = 0;
    bool rho_bound_holds = false;  // pointwise check on the recorded range
    std::optional<std::size_t> first_violation;
    bool trivial = false;          // no positive-rho range to certify
    std::size_t tail_from = 0;     // first index the tail-sum bound covers
    double tail_sum_bound = 0.0;   // (beta/a)^(1/k) * sum_{n>=tail_from} n^(-1/k), by integral comparison
};

/// Telescopic partial sum with a geometric tail estimate when the late
/// ratios are stable and bounded away from 1.
struct TeleSumCertificate {
    double partial = 0.0;
    std::optional<double> ratio;          // max ratio over the window
    std::optional<double> tail_estimate;  // rho_last * r / (1 - r)
};

using Certificate = std::variant<HyersUlamCertificate, TailBoundCertificate, TeleSumCertificate>;

template <typename P>
struct PicardRun {
    SequenceTrace<P> trace;
    RunStatus status = RunStatus::BudgetExhausted;
    std::optional<std::size_t> fixed_index;  // FixedPointHit: rho_i == 0 exactly
    std::optional<P> limit;                  // Converged: the final iterate
    double eps = 0.0;
    std::vector<Certificate> certificates;

    const P& last_point() const { return trace.points.back(); }
};

struct PicardOptions {
    double eps = 1e-9;
    std::size_t max_iter = 1000;
    std::size_t convergence_window = 8;  // consecutive sub-eps steps required
    std::size_t divergence_window = 32;  // consecutive strictly increasing rho
};

/// Runs x_{n+1} = T(x_n) from x0.
///
/// FixedPointHit fires exactly when rho_n == 0. Converged requires
/// convergence_window consecutive rho < eps AND all pairwise distances inside
/// that window <= 2 eps; consecutive distances alone are not enough, the
/// harmonic walk defeats a single-step criterion. Divergence is only a label:
/// the budget is always spent unless a distance turns non-finite.
template <MetricSpaceLike S>
PicardRun<typename S::Point> picard_iterate(const S& space, const SelfMap<typename S::Point>& T,
                                            const typename S::Point& x0,
                                            const PicardOptions& opt) {
    using P = typename S::Point;
    if (opt.max_iter < 1) throw InvalidParameter("picard_iterate: max_iter must be >= 1");
    if (!(opt.eps > 0.0)) throw InvalidParameter("picard_iterate: eps must be positive");
    if (opt.convergence_window < 1)
        throw InvalidParameter("picard_iterate: convergence window must be >= 1");

    PicardRun<P> run;
    run.eps = opt.eps;
    run.trace.points.push_back(x0);

    std::size_t sub_eps_streak = 0;
    std::size_t increasing_streak = 0;

    for (std::size_t n = 0; n < opt.max_iter; ++n) {
        P next = T.apply(run.trace.points.back());
        const double rho = space.dist(run.trace.points.back(), next);
        run.trace.points.push_back(std::move(next));
        run.trace.rho.push_back(rho);

        if (rho == 0.0) {
            run.status = RunStatus::FixedPointHit;
            run.fixed_index = n;
            run.limit = run.trace.points.back();
            return run;
        }
        if (!std::isfinite(rho)) {
            run.status = RunStatus::DivergenceSuspected;
            return run;
        }

        if (n > 0 && rho > run.trace.rho[n - 1])
            ++increasing_streak;
        else
            increasing_streak = 0;

        sub_eps_streak = (rho < opt.eps) ? sub_eps_streak + 1 : 0;
        if (sub_eps_streak >= opt.convergence_window) {
            const std::size_t w = opt.convergence_window + 1;  // points in the window
            const std::size_t first = run.trace.points.size() - w;
            bool tight = true;
            for (std::size_t i = first; i < run.trace.points.size() && tight; ++i)
                for (std::size_t j = i + 1; j < run.trace.points.size() && tight; ++j)
                    if (space.dist(run.trace.points[i], run.trace.points[j]) > 2 * opt.eps)
                        tight = false;
            if (tight) {
                run.status = RunStatus::Converged;
                run.limit = run.trace.points.back();
                return run;
            }
        }
    }
    run.status = (increasing_streak >= opt.divergence_window) ? RunStatus::DivergenceSuspected
                                                              : RunStatus::BudgetExhausted;
    return run;
}

/// Phi(d(x,Tx)) as an upper bound on the distance from x to the fixed point,
/// computed as the converged partial sum plus its geometric tail estimate.
/// Throws SeriesNotConvergent unless phi_series converges at the input.
double hyers_ulam_bound(const ComparisonFunction& phi, double d_x_Tx, const Tolerance& tol = {},
                        std::size_t n_cap = 1'000'000);

/// Certifies rho_n <= (beta/(a n))^(1/k) from the least rank the recorded
/// data supports.
///
/// When beta is not given it defaults to 1.05x the maximum of
/// [F(rho_0) - F(rho_n)] rho_n^k over a burn-in window (the first quarter of
/// the positive-rho range), the tightest certificate the data supports. The
/// tail-sum bound covers indices past the recorded range by integral
/// comparison. Throws RankNotFound when even the final recorded step violates
/// the beta level.
TailBoundCertificate tail_bound_regular(std::span<const double> rho, const WardowskiFunction& F,
                                        double a, double k, std::optional<double> beta = {});

template <typename P>
TailBoundCertificate tail_bound_regular(const PicardRun<P>& run, const WardowskiFunction& F,
                                        double a, double k, std::optional<double> beta = {}) {
    return tail_bound_regular(std::span<const double>(run.trace.rho), F, a, k, beta);
}

/// Telescopic partial sum of the recorded rho with a geometric tail estimate.
/// The estimate is withheld when the window ratios approach 1 or drift
/// monotonically upward (harmonic-type decay).
TeleSumCertificate telescopic_certificate(std::span<const double> rho);

template <typename P>
TeleSumCertificate telescopic_certificate(const PicardRun<P>& run) {
    return telescopic_certificate(std::span<const double>(run.trace.rho));
}

/// Desk-scale operator classification from multiple starts. Each field is
/// finite-run evidence for the corresponding property, not the property
/// itself.
template <typename P>
struct OperatorClassification {
    bool picard_evidence = false;          // all runs settled
    bool strong_evidence = false;          // each limit is eps-fixed
    bool globally_strong_evidence = false; // limits pairwise within eps
    bool tele_evidence = false;            // every run has a finite tail estimate
    std::vector<PicardRun<P>> runs;
};

template <MetricSpaceLike S>
OperatorClassification<typename S::Point> classify_operator(
    const S& space, const SelfMap<typename S::Point>& T,
    std::span<const typename S::Point> starts, const PicardOptions& opt) {
    using P = typename S::Point;
    if (starts.size() < 2) throw InvalidParameter("classify_operator: need >= 2 start points");

    OperatorClassification<P> out;
    out.runs.reserve(starts.size());
    for (const P& x0 : starts) out.runs.push_back(picard_iterate(space, T, x0, opt));

    out.picard_evidence = true;
    out.strong_evidence = true;
    out.tele_evidence = true;
    std::vector<P> limits;
    for (auto& run : out.runs) {
        const bool settled =
            run.status == RunStatus::Converged || run.status == RunStatus::FixedPointHit;
        out.picard_evidence = out.picard_evidence && settled;
        if (!settled) continue;
        const P& lim = *run.limit;
        if (space.dist(lim, T.apply(lim)) > opt.eps) out.strong_evidence = false;
        auto cert = telescopic_certificate(run);
        if (!cert.tail_estimate) out.tele_evidence = false;
        run.certificates.push_back(cert);
        limits.push_back(lim);
    }
    if (!out.picard_evidence) {
        out.strong_evidence = false;
        out.tele_evidence = false;
        out.globally_strong_evidence = false;
        return out;
    }
    out.strong_evidence = out.strong_evidence && out.picard_evidence;
    out.globally_strong_evidence = out.strong_evidence;
    for (std::size_t i = 0; i < limits.size() && out.globally_strong_evidence; ++i)
        for (std::size_t j = i + 1; j < limits.size(); ++j)
            if (space.dist(limits[i], limits[j]) > opt.eps) {
                out.globally_strong_evidence = false;
                break;
            }
    out.tele_evidence = out.tele_evidence && out.picard_evidence;
    return out;
}

} // namespace wardowski
