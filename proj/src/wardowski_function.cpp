#include "wardowski/wardowski_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wardowski {

WardowskiFunction make_log_poly(double alpha, double beta, double gamma) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
        throw InvalidParameter("make_log_poly: alpha, beta, gamma must be positive");
    WardowskiFunction F;
    F.eval = [alpha, beta, gamma](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(std::log(alpha * t * t + beta * t) + gamma * t);
    };
    F.name = "log_poly(" + std::to_string(alpha) + "," + std::to_string(beta) + "," +
             std::to_string(gamma) + ")";
    return F;
}

WardowskiFunction make_neg_power(double delta) {
    if (!(delta > 0.0)) throw InvalidParameter("make_neg_power: delta must be positive");
    WardowskiFunction F;
    F.eval = [delta](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(-std::pow(t, -delta));
    };
    F.name = "neg_power(" + std::to_string(delta) + ")";
    return F;
}

WardowskiFunction make_log() {
    WardowskiFunction F;
    F.eval = [](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(std::log(t));
    };
    F.name = "log";
    return F;
}

WardowskiFunction make_step_log(double jump, double at) {
    if (!(jump > 0.0) || !(at > 0.0))
        throw InvalidParameter("make_step_log: jump and at must be positive");
    WardowskiFunction F;
    F.eval = [jump, at](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(std::log(t) + (t >= at ? jump : 0.0));
    };
    F.discontinuities = {at};
    F.left_continuous = false;
    F.name = "step_log(" + std::to_string(jump) + "," + std::to_string(at) + ")";
    return F;
}

std::pair<ExtReal, ExtReal> lateral_limits(const WardowskiFunction& F, double t,
                                           const Tolerance& tol) {
    tol.validate();
    if (!(t > 0.0)) throw InvalidParameter("lateral_limits: t must be positive");

    const ExtReal at_t = F.eval(t);
    ExtReal left = F.eval(t / 2);
    ExtReal right = F.eval(t * 2);
    for (int i = 1; i <= 52; ++i) {
        const double step = std::ldexp(1.0, -i);
        const double sl = t * (1.0 - step);
        const double sr = t * (1.0 + step);
        if (sl > 0.0 && sl < t) left = F.eval(sl);
        if (sr > t && std::isfinite(sr)) right = F.eval(sr);
    }
    // Monotone F keeps the one-sided samples on their side of F(t).
    if (ext_compare(left, at_t) == std::strong_ordering::greater) left = at_t;
    if (ext_compare(right, at_t) == std::strong_ordering::less) right = at_t;
    return {left, right};
}

namespace {

bool descent_is_steady(std::span<const ExtReal> values) {
    // All finite samples strictly decreasing, and the late decrements have
    // not collapsed relative to the early ones.
    std::vector<double> v;
    v.reserve(values.size());
    for (const ExtReal& e : values)
        if (e.is_finite()) v.push_back(e.finite_value());
    if (v.size() < 8) return false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i + 1] < v[i])) return false;
    const std::size_t q = v.size() / 4;
    double head = 0.0, tail = 0.0;
    for (std::size_t i = 0; i < q; ++i) head += v[i] - v[i + 1];
    for (std::size_t i = v.size() - 1 - q; i + 1 < v.size(); ++i) tail += v[i] - v[i + 1];
    return tail >= 0.1 * head;
}

} // namespace

AxiomReport check_axioms(const WardowskiFunction& F, std::span<const double> grid,
                         std::span<const double> zero_seq) {
    if (grid.size() < 2) throw InvalidParameter("check_axioms: grid needs >= 2 points");
    if (zero_seq.empty()) throw InvalidParameter("check_axioms: zero_seq must be nonempty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]) || !(grid[i] > 0.0))
            throw InvalidParameter("check_axioms: grid must be positive ascending");
    for (std::size_t i = 0; i + 1 < zero_seq.size(); ++i)
        if (!(zero_seq[i + 1] < zero_seq[i]) || !(zero_seq[i + 1] > 0.0))
            throw InvalidParameter("check_axioms: zero_seq must be positive decreasing");

    AxiomReport rep;

    // pole axiom: -inf exactly at zero.
    rep.pole_pass = F.eval(0.0).is_neg_inf();
    if (!rep.pole_pass) rep.pole_witness = 0.0;
    if (rep.pole_pass) {
        for (double t : grid) {
            if (F.eval(t).is_neg_inf()) {
                rep.pole_pass = false;
                rep.pole_witness = t;
                break;
            }
        }
    }

    // monotone along consecutive grid points, strict or weak per the flag.
    rep.monotone_pass = true;
    for (std::size_t i = 0; i + 1 < grid.size() && rep.monotone_pass; ++i) {
        const auto cmp = ext_compare(F.eval(grid[i]), F.eval(grid[i + 1]));
        const bool ok = F.strict ? cmp == std::strong_ordering::less
                                 : cmp != std::strong_ordering::greater;
        if (!ok) {
            rep.monotone_pass = false;
            rep.monotone_witness = {grid[i], grid[i + 1]};
        }
    }

    // unbounded-descent ladder along the zero sequence.
    std::vector<ExtReal> zvals;
    zvals.reserve(zero_seq.size());
    for (double t : zero_seq) zvals.push_back(F.eval(t));
    const bool steady = descent_is_steady(zvals);
    rep.descent_pass = true;
    bool first_bound = true;
    for (double B : kDescentLadder) {
        bool reached = false;
        for (const ExtReal& v : zvals) {
            if (ext_compare(v, ExtReal(B)) == std::strong_ordering::less) {
                reached = true;
                break;
            }
        }
        const bool ok = reached || (!first_bound && steady);
        if (!ok) {
            rep.descent_pass = false;
            rep.descent_failed_bound = B;
            break;
        }
        first_bound = false;
    }

    // order reflection on all ordered grid pairs, zero included.
    rep.order_reflect_pass = true;
    std::vector<double> pts(grid.begin(), grid.end());
    pts.insert(pts.begin(), 0.0);
    std::vector<ExtReal> fv;
    fv.reserve(pts.size());
    for (double t : pts) fv.push_back(F.eval(t));
    for (std::size_t i = 0; i < pts.size() && rep.order_reflect_pass; ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (ext_compare(fv[i], fv[j]) == std::strong_ordering::less && !(pts[i] < pts[j])) {
                rep.order_reflect_pass = false;
                rep.order_reflect_witness = {pts[i], pts[j]};
                break;
            }
        }
    }
    return rep;
}

RegularityVerdict classify_regularity(const WardowskiFunction& F, double k,
                                      std::span<const double> zero_seq) {
    if (!(k > 0.0) || !(k < 1.0)) throw InvalidParameter("classify_regularity: k must be in (0,1)");
    if (zero_seq.size() < 8)
        throw InvalidParameter("classify_regularity: zero_seq needs >= 8 points");

    RegularityVerdict v;
    v.k = k;
    v.evidence.reserve(zero_seq.size());
    for (double t : zero_seq) {
        const ExtReal f = F.eval(t);
        const double g = f.is_finite() ? std::pow(t, k) * f.finite_value()
                                       : -std::numeric_limits<double>::infinity();
        v.evidence.emplace_back(t, g);
    }

    // Regular: |g| clears every threshold and stays cleared to the end.
    bool regular = true;
    for (double theta : kEpsLadder) {
        std::size_t last_above = 0;
        bool any_above = false;
        for (std::size_t i = 0; i < v.evidence.size(); ++i) {
            if (!(std::fabs(v.evidence[i].second) < theta)) {
                last_above = i;
                any_above = true;
            }
        }
        if (any_above && last_above + 1 >= v.evidence.size()) {
            regular = false;
            break;
        }
    }
    if (regular) {
        v.status = Regularity::Regular;
        return v;
    }

    // NotRegular: magnitude nondecreasing over the last quarter and at least
    // doubled across it.
    const std::size_t n = v.evidence.size();
    const std::size_t q0 = n - n / 4;
    bool growing = true;
    for (std::size_t i = q0; i + 1 < n; ++i)
        if (std::fabs(v.evidence[i + 1].second) < std::fabs(v.evidence[i].second)) growing = false;
    const double first_mag = std::fabs(v.evidence[q0].second);
    const double last_mag = std::fabs(v.evidence[n - 1].second);
    if (growing && last_mag >= 2.0 * first_mag && last_mag > 0.0)
        v.status = Regularity::NotRegular;
    else
        v.status = Regularity::Inconclusive;
    return v;
}

namespace {

/// Least index i0 such that pred holds for every element from i0 on; nullopt
/// when even the final element fails.
template <typename T, typename Pred>
std::optional<std::size_t> tail_start(std::span<const T> xs, Pred pred) {
    std::size_t first_good = xs.size();
    for (std::size_t i = xs.size(); i-- > 0;) {
        if (!pred(xs[i])) break;
        first_good = i;
    }
    if (first_good == xs.size()) return std::nullopt;
    return first_good;
}

} // namespace

VanishingResult vanishing_check(std::span<const std::pair<double, ExtReal>> samples,
                          std::span<const double> bound_ladder,
                          std::span<const double> eps_ladder) {
    for (const auto& [t, f] : samples)
        if (!(t > 0.0)) throw InvalidParameter("vanishing_check: sequence entries must be positive");

    VanishingResult res;
    if (samples.empty()) return res;

    // Premise: for every bound B, a tail of the F values stays below B.
    bool premise = true;
    for (double B : bound_ladder) {
        auto from = tail_start(samples, [&](const std::pair<double, ExtReal>& s) {
            return ext_compare(s.second, ExtReal(B)) == std::strong_ordering::less;
        });
        if (!from) {
            premise = false;
            break;
        }
    }
    if (!premise) return res;  // vacuously true

    for (double eps : eps_ladder) {
        auto from = tail_start(samples, [&](const std::pair<double, ExtReal>& s) {
            return s.first < eps;
        });
        if (!from) {
            res.held = false;
            res.failed_eps = eps;
            for (std::size_t i = samples.size(); i-- > 0;) {
                if (!(samples[i].first < eps)) {
                    res.witness_index = i;
                    break;
                }
            }
            return res;
        }
    }
    return res;
}

VanishingResult vanishing_check(const WardowskiFunction& F, std::span<const double> ts,
                          std::span<const double> bound_ladder,
                          std::span<const double> eps_ladder) {
    std::vector<std::pair<double, ExtReal>> samples;
    samples.reserve(ts.size());
    for (double t : ts) {
        if (!(t > 0.0)) throw InvalidParameter("vanishing_check: sequence entries must be positive");
        samples.emplace_back(t, F.eval(t));
    }
    return vanishing_check(std::span<const std::pair<double, ExtReal>>(samples), bound_ladder,
                        eps_ladder);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw InvalidParameter("log_grid: need 0 < lo < hi and count >= 2");
    std::vector<double> g(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_zero_seq() {
    std::vector<double> z;
    z.reserve(200);
    for (int k = 1; k <= 200; ++k) z.push_back(std::ldexp(1.0, -k));
    return z;
}

} // namespace wardowski
