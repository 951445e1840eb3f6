#include "wardowski/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace wardowski {

DerivePhiPoint derive_phi_detailed(const WardowskiFunction& F, double a, double t,
                                   const Tolerance& tol) {
    if (!(a > 0.0)) throw InvalidParameter("derive_phi: a must be positive");
    if (!(t >= 0.0)) throw InvalidParameter("derive_phi: t must be nonnegative");
    if (t == 0.0) return {0.0, 0.0, false};  // M(a,F)(0) = {0}

    const ExtReal threshold = F.eval(t) - a;
    const auto r = monotone_sup_below([&F](double s) { return F.eval(s); }, threshold, 0.0, t, tol);
    return {t, r.value, r.budget_exhausted};
}

double derive_phi(const WardowskiFunction& F, double a, double t, const Tolerance& tol) {
    return derive_phi_detailed(F, a, t, tol).phi;
}

ComparisonFunction linear_comparison(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw InvalidParameter("linear_comparison: alpha must be in (0,1)");
    ComparisonFunction phi;
    phi.eval = [alpha](double t) { return alpha * t; };
    phi.provenance = LinearProvenance{alpha};
    return phi;
}

ComparisonFunction derived_comparison(const WardowskiFunction& F, double a, const Tolerance& tol) {
    if (!(a > 0.0)) throw InvalidParameter("derived_comparison: a must be positive");
    tol.validate();
    ComparisonFunction phi;
    phi.eval = [F, a, tol](double t) { return derive_phi(F, a, t, tol); };
    phi.provenance = DerivedProvenance{F.name, a, tol, F.left_continuous};
    return phi;
}

ComparisonFunction user_comparison(std::function<double(double)> fn) {
    ComparisonFunction phi;
    phi.eval = std::move(fn);
    phi.provenance = UserProvenance{};
    return phi;
}

double iterate_phi(const ComparisonFunction& phi, double t, std::size_t n) {
    double x = t;
    for (std::size_t i = 0; i < n; ++i) x = phi.eval(x);
    return x;
}

std::vector<MatkowskiVerdict> check_matkowski(const ComparisonFunction& phi,
                                              std::span<const double> t_grid, std::size_t n_cap,
                                              std::span<const double> eps_ladder) {
    if (n_cap < 1) throw InvalidParameter("check_matkowski: n_cap must be >= 1");
    if (eps_ladder.empty()) throw InvalidParameter("check_matkowski: eps ladder must be nonempty");
    const double floor_eps = *std::min_element(eps_ladder.begin(), eps_ladder.end());

    std::vector<MatkowskiVerdict> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        MatkowskiVerdict v;
        v.t = t;
        v.eps_first_rank.assign(eps_ladder.size(), std::nullopt);
        double x = t;
        for (std::size_t n = 0; n <= n_cap; ++n) {
            for (std::size_t e = 0; e < eps_ladder.size(); ++e)
                if (!v.eps_first_rank[e] && x < eps_ladder[e]) v.eps_first_rank[e] = n;
            v.steps_used = n;
            if (x < floor_eps) break;
            if (n == n_cap) break;
            x = phi.eval(x);
        }
        const bool all = std::all_of(v.eps_first_rank.begin(), v.eps_first_rank.end(),
                                     [](const auto& r) { return r.has_value(); });
        v.status = all ? MatkowskiStatus::Verified : MatkowskiStatus::Inconclusive;
        out.push_back(std::move(v));
    }
    return out;
}

SeriesResult phi_series(const ComparisonFunction& phi, double t, const Tolerance& tol,
                        std::size_t n_cap) {
    tol.validate();
    if (!(t >= 0.0)) throw InvalidParameter("phi_series: t must be nonnegative");

    constexpr double kBlowUp = 1e12;
    constexpr double kStallRatio = 1.0 - 1e-9;
    constexpr std::size_t kStallCount = 10'000;
    constexpr std::size_t kRatioWindow = 8;

    SeriesResult res;
    double term = t;
    double prev = 0.0;
    std::deque<double> ratios;
    std::size_t stall = 0;

    for (std::size_t n = 0; n <= n_cap; ++n) {
        res.value += term;
        res.truncated_at = n;

        if (term == 0.0) {  // exact absorption: every later iterate stays 0
            res.status = SeriesStatus::Converged;
            res.tail_estimate = 0.0;
            return res;
        }
        if (n > 0) {
            const double r = term / prev;
            ratios.push_back(r);
            if (ratios.size() > kRatioWindow) ratios.pop_front();
            stall = (r >= kStallRatio) ? stall + 1 : 0;

            if (ratios.size() == kRatioWindow) {
                const double rhat = *std::max_element(ratios.begin(), ratios.end());
                if (rhat < 1.0 && term <= tol.abs_tol * (1.0 - rhat)) {
                    res.status = SeriesStatus::Converged;
                    res.tail_estimate = term * rhat / (1.0 - rhat);
                    return res;
                }
            }
        }
        if (stall >= kStallCount || (res.value > kBlowUp && term >= tol.abs_tol)) {
            res.status = SeriesStatus::Diverging;
            return res;
        }

        prev = term;
        term = phi.eval(term);
        if (!(term >= 0.0))
            throw PreconditionViolated("phi_series: phi produced a negative or NaN iterate");
    }
    res.status = SeriesStatus::Inconclusive;
    return res;
}

} // namespace wardowski
