#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wardowski/comparison.hpp"
#include "wardowski/metric.hpp"
#include "wardowski/solver.hpp"
#include "wardowski/wardowski_function.hpp"

namespace wardowski {

enum class ContractionCondition { AFContractive, PhiContractive, Strict, Nonexpansive };

std::string to_string(ContractionCondition c);

/// How the pair set under test was produced. The seed is recorded so sampled
/// reports are reproducible.
struct CheckMode {
    enum class Kind { Exhaustive, Sampled } kind = Kind::Exhaustive;
    std::size_t count = 0;
    std::uint64_t seed = 0;

    static CheckMode exhaustive(std::size_t count) { return {Kind::Exhaustive, count, 0}; }
    static CheckMode sampled(std::size_t count, std::uint64_t seed) {
        return {Kind::Sampled, count, seed};
    }
};

template <typename P>
struct ContractionReport {
    ContractionCondition condition = ContractionCondition::Strict;
    CheckMode mode;
    bool holds = false;
    std::optional<std::pair<P, P>> witness;  // first failing pair in scan order
    double witness_lhs = 0.0;
    double witness_rhs = 0.0;
    std::size_t pairs_checked = 0;
};

/// a + F(d(Tx,Ty)) <= F(d(x,y)) over the given pairs, in extended-real
/// arithmetic with exact comparison; pairs with x == y are skipped. The first
/// failing pair in scan order is the witness, so partitioned scans agree.
template <MetricSpaceLike S>
ContractionReport<typename S::Point> check_aF_contractive(
    const S& space, const SelfMap<typename S::Point>& T, const WardowskiFunction& F, double a,
    std::span<const std::pair<typename S::Point, typename S::Point>> pairs, CheckMode mode) {
    if (!(a > 0.0)) throw InvalidParameter("check_aF_contractive: a must be positive");
    ContractionReport<typename S::Point> rep;
    rep.condition = ContractionCondition::AFContractive;
    rep.mode = mode;
    rep.holds = true;
    for (const auto& [x, y] : pairs) {
        if (x == y) continue;
        ++rep.pairs_checked;
        const double d = space.dist(x, y);
        const double dT = space.dist(T.apply(x), T.apply(y));
        const ExtReal lhs = F.eval(dT) + a;
        const ExtReal rhs = F.eval(d);
        if (ext_compare(lhs, rhs) == std::strong_ordering::greater) {
            rep.holds = false;
            rep.witness = {x, y};
            rep.witness_lhs = lhs.is_finite() ? lhs.finite_value() : 0.0;
            rep.witness_rhs = rhs.is_finite() ? rhs.finite_value() : 0.0;
            return rep;
        }
    }
    return rep;
}

/// d(Tx,Ty) <= phi(d(x,y)) over the given pairs. A derived phi underestimates
/// the true supremum by at most its bisection tolerance, so that tolerance is
/// granted as slack; linear and user phis are compared exactly.
template <MetricSpaceLike S>
ContractionReport<typename S::Point> check_phi_contractive(
    const S& space, const SelfMap<typename S::Point>& T, const ComparisonFunction& phi,
    std::span<const std::pair<typename S::Point, typename S::Point>> pairs, CheckMode mode) {
    double slack = 0.0;
    if (const auto* der = std::get_if<DerivedProvenance>(&phi.provenance))
        slack = der->tol.abs_tol;

    ContractionReport<typename S::Point> rep;
    rep.condition = ContractionCondition::PhiContractive;
    rep.mode = mode;
    rep.holds = true;
    for (const auto& [x, y] : pairs) {
        if (x == y) continue;
        ++rep.pairs_checked;
        const double d = space.dist(x, y);
        const double dT = space.dist(T.apply(x), T.apply(y));
        const double bound = phi.eval(d);
        if (dT > bound + slack) {
            rep.holds = false;
            rep.witness = {x, y};
            rep.witness_lhs = dT;
            rep.witness_rhs = bound;
            return rep;
        }
    }
    return rep;
}

/// Strict contraction over pairs x != y, and nonexpansiveness over all pairs.
template <MetricSpaceLike S>
std::pair<ContractionReport<typename S::Point>, ContractionReport<typename S::Point>>
check_strict_and_nonexpansive(
    const S& space, const SelfMap<typename S::Point>& T,
    std::span<const std::pair<typename S::Point, typename S::Point>> pairs, CheckMode mode) {
    ContractionReport<typename S::Point> strict, nonexp;
    strict.condition = ContractionCondition::Strict;
    nonexp.condition = ContractionCondition::Nonexpansive;
    strict.mode = nonexp.mode = mode;
    strict.holds = nonexp.holds = true;
    for (const auto& [x, y] : pairs) {
        const double d = space.dist(x, y);
        const double dT = space.dist(T.apply(x), T.apply(y));
        ++nonexp.pairs_checked;
        if (nonexp.holds && dT > d) {
            nonexp.holds = false;
            nonexp.witness = {x, y};
            nonexp.witness_lhs = dT;
            nonexp.witness_rhs = d;
        }
        if (x == y) continue;
        ++strict.pairs_checked;
        if (strict.holds && !(dT < d)) {
            strict.holds = false;
            strict.witness = {x, y};
            strict.witness_lhs = dT;
            strict.witness_rhs = d;
        }
    }
    return {strict, nonexp};
}

/// All ordered pairs (i, j), i != j, of a finite space.
std::vector<std::pair<std::size_t, std::size_t>> exhaustive_pairs(const FiniteMetricSpace& space);

/// Seeded uniform pairs from a real interval.
std::vector<std::pair<double, double>> sample_pairs_box(double lo, double hi, std::size_t count,
                                                        std::uint64_t seed);

/// Seeded uniform pairs from a Euclidean box.
std::vector<std::pair<std::vector<double>, std::vector<double>>> sample_pairs_box(
    const std::vector<double>& lo, const std::vector<double>& hi, std::size_t count,
    std::uint64_t seed);

/// Rank sequences m(j), n(j) extracted from a semi-Cauchy-but-not-Cauchy
/// prefix at level eta, with the recorded property checks.
struct WitnessExtraction {
    double eta = 0.0;
    std::optional<std::size_t> j_eta;  // first rank with rho < eta onward
    std::vector<std::size_t> m_seq;
    std::vector<std::size_t> n_seq;

    bool overshoot_all = false;  // d(x_m(j), x_n(j)) > eta for every j, exact
    bool gap_all = false;        // beyond j_eta: n-m >= 2 and d(x_m, x_{n-1}) <= eta
    std::optional<std::size_t> gap_violation;

    double trend_overshoot = 0.0;  // mean of d(x_m(j), x_n(j)) - eta, last quarter of j
    // mean |d(x_{m(j)+p}, x_{n(j)+q}) - eta| over the last quarter, per shift;
    // absent when the shifted indices run off the prefix.
    std::array<std::array<std::optional<double>, 2>, 2> trend_shifted;
};

/// Extracts m(j) = least m >= j admitting n > m with d(x_m, x_n) > eta, and
/// n(j) = least such n, for j = 0..j_count-1 (all feasible j when j_count is
/// not given). Throws EtaInDelta when eta is a declared discontinuity point
/// and PrefixTooShort when some requested rank has no overshooting pair.
template <MetricSpaceLike S>
WitnessExtraction extract_witness(const S& space, const SequenceTrace<typename S::Point>& trace,
                                  double eta, std::span<const double> delta,
                                  std::optional<std::size_t> j_count = {}) {
    if (!(eta > 0.0)) throw InvalidParameter("extract_witness: eta must be positive");
    for (double d : delta)
        if (d == eta) throw EtaInDelta("extract_witness: eta lies in the declared delta set");
    const std::size_t N = trace.length();
    if (N < 2) throw PrefixTooShort(0);

    // first_exceed[m] = least n > m with d(x_m, x_n) > eta, if any.
    std::vector<std::optional<std::size_t>> first_exceed(N);
    for (std::size_t m = 0; m + 1 < N; ++m) {
        for (std::size_t n = m + 1; n < N; ++n) {
            if (space.dist(trace.points[m], trace.points[n]) > eta) {
                first_exceed[m] = n;
                break;
            }
        }
    }

    WitnessExtraction w;
    w.eta = eta;

    std::size_t first_small = trace.rho.size();
    for (std::size_t i = trace.rho.size(); i-- > 0;) {
        if (!(trace.rho[i] < eta)) break;
        first_small = i;
    }
    if (first_small < trace.rho.size()) w.j_eta = first_small;

    std::size_t j_max_feasible = 0;
    bool any = false;
    for (std::size_t m = 0; m + 1 < N; ++m)
        if (first_exceed[m]) {
            j_max_feasible = m;
            any = true;
        }
    if (!any) throw PrefixTooShort(0);

    const std::size_t J = j_count ? *j_count : j_max_feasible + 1;
    w.m_seq.reserve(J);
    w.n_seq.reserve(J);
    std::size_t m = 0;
    for (std::size_t j = 0; j < J; ++j) {
        m = std::max(m, j);
        while (m + 1 < N && !first_exceed[m]) ++m;
        if (m + 1 >= N || !first_exceed[m]) throw PrefixTooShort(j);
        w.m_seq.push_back(m);
        w.n_seq.push_back(*first_exceed[m]);
    }

    w.overshoot_all = true;
    for (std::size_t j = 0; j < J; ++j)
        if (!(space.dist(trace.points[w.m_seq[j]], trace.points[w.n_seq[j]]) > eta))
            w.overshoot_all = false;

    w.gap_all = true;
    if (w.j_eta) {
        for (std::size_t j = *w.j_eta; j < J; ++j) {
            const bool ok = w.n_seq[j] - w.m_seq[j] >= 2 &&
                            space.dist(trace.points[w.m_seq[j]], trace.points[w.n_seq[j] - 1]) <= eta;
            if (!ok) {
                w.gap_all = false;
                w.gap_violation = j;
                break;
            }
        }
    }

    const std::size_t q0 = J - std::max<std::size_t>(1, J / 4);
    double acc = 0.0;
    for (std::size_t j = q0; j < J; ++j)
        acc += space.dist(trace.points[w.m_seq[j]], trace.points[w.n_seq[j]]) - eta;
    w.trend_overshoot = acc / static_cast<double>(J - q0);

    for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t q = 0; q < 2; ++q) {
            double s = 0.0;
            std::size_t cnt = 0;
            for (std::size_t j = q0; j < J; ++j) {
                const std::size_t mi = w.m_seq[j] + p, ni = w.n_seq[j] + q;
                if (mi >= N || ni >= N) continue;
                s += std::fabs(space.dist(trace.points[mi], trace.points[ni]) - eta);
                ++cnt;
            }
            if (cnt > 0) w.trend_shifted[p][q] = s / static_cast<double>(cnt);
        }
    }
    return w;
}

/// Exact fixed-point set {i : T(i) = i} of a table map on 0..n-1.
std::vector<std::size_t> brute_force_fixed_points(std::size_t n,
                                                  std::span<const std::size_t> table);

/// Midpoint of the largest gap between consecutive delta points inside
/// [lo, hi]; the whole interval counts as one gap when delta is empty there.
double propose_eta(std::span<const double> delta, double lo, double hi);

} // namespace wardowski
