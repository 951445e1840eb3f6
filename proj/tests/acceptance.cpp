// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "wardowski/comparison.hpp"
#include "wardowski/metric.hpp"
#include "wardowski/solver.hpp"
#include "wardowski/verifier.hpp"
#include "wardowski/wardowski_function.hpp"

using namespace wardowski;

namespace {

int g_failures = 0;

struct Gate {
    bool ok = true;
    std::string why;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

void report(int num, const std::string& name, const Gate& gate, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", gate.ok ? "PASS" : "FAIL", num, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!gate.ok) {
        std::printf("       reason: %s\n", gate.why.c_str());
        ++g_failures;
    }
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

SelfMap<double> affine(double scale, double offset = 0.0) {
    return {[scale, offset](const double& x) { return scale * x + offset; }, "affine"};
}

SelfMap<std::size_t> table_map(std::vector<std::size_t> table) {
    return {[table](const std::size_t& i) { return table[i]; }, "table"};
}

std::vector<double> harmonic_walk(std::size_t len) {
    std::vector<double> xs(len, 0.0);
    for (std::size_t n = 1; n < len; ++n) xs[n] = xs[n - 1] + 1.0 / static_cast<double>(n);
    return xs;
}

// Independent oracle for criterion 1: dense grid scan of the sublevel set.
double grid_phi_oracle(const WardowskiFunction& F, double a, double t, std::size_t cells) {
    const ExtReal thr = F.eval(t) - a;
    double best = 0.0;
    for (std::size_t i = 0; i <= cells; ++i) {
        const double s = t * static_cast<double>(i) / static_cast<double>(cells);
        if (ext_compare(F.eval(s), thr) != std::strong_ordering::greater) best = s;
    }
    return best;
}

void criterion_1() {
    Gate g;
    const double t_start = now_seconds();

    const auto Flog = make_log();
    const auto Fnp = make_neg_power(1.0);
    const double as[] = {0.2, 0.5, std::log(2.0), 1.0, 2.0};
    const double ts[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    double worst_log = 0.0, worst_np = 0.0;
    for (double a : as)
        for (double t : ts) {
            worst_log = std::max(worst_log, std::fabs(derive_phi(Flog, a, t) - std::exp(-a) * t));
            worst_np = std::max(worst_np, std::fabs(derive_phi(Fnp, a, t) - t / (1.0 + a * t)));
        }
    g.require(worst_log <= 1e-8, "log family misses the closed form (" + std::to_string(worst_log) + ")");
    g.require(worst_np <= 1e-8, "neg_power family misses the closed form");

    struct Spot {
        const WardowskiFunction& F;
        double a, t;
    };
    const Spot spots[] = {{Flog, std::log(2.0), 1.0}, {Fnp, 1.0, 2.0}, {Flog, 0.5, 5.0}};
    for (const auto& s : spots) {
        const double oracle = grid_phi_oracle(s.F, s.a, s.t, 1'000'000);
        g.require(std::fabs(derive_phi(s.F, s.a, s.t) - oracle) <= 1e-8 + 2.0 * s.t / 1'000'000,
                  "grid brute-force oracle disagrees at a spot case");
    }

    const double elapsed = now_seconds() - t_start;
    g.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + "s exceeds 1s");
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |err| log=%.2e neg_power=%.2e, %.2fs", worst_log,
                  worst_np, elapsed);
    report(1, "closed-form phi derivation", g, detail);
}

PicardRun<double> banach_run() {
    RealLine line;
    PicardOptions opt;
    opt.eps = 1e-9;
    opt.max_iter = 40;
    return picard_iterate(line, affine(0.5), 1.0, opt);
}

void criterion_2() {
    Gate g;
    const auto run = banach_run();
    g.require(run.status == RunStatus::Converged, "run did not converge within 40 iterations");
    g.require(run.limit && std::fabs(*run.limit) <= 1e-9, "limit misses 0 by more than 1e-9");

    const auto banach_phi = linear_comparison(0.5);
    for (std::size_t n = 0; n < run.trace.rho.size() && g.ok; ++n) {
        const double bound = hyers_ulam_bound(banach_phi, run.trace.rho[n]);
        g.require(bound == 2.0 * run.trace.rho[n],
                  "Phi(rho_n) is not exactly 2 rho_n at n=" + std::to_string(n));
        g.require(std::fabs(run.trace.points[n]) <= bound,
                  "dist(x_n, 0) exceeds the Hyers-Ulam bound at n=" + std::to_string(n));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "%zu iterations, limit %.2e", run.trace.rho.size(),
                  run.limit ? *run.limit : -1.0);
    report(2, "Banach tightness with exact Hyers-Ulam bound", g, detail);
}

void criterion_3() {
    Gate g;
    const auto run = banach_run();
    const auto F = make_log();
    const double a = std::log(2.0);
    const double F0 = F.eval(run.trace.rho[0]).finite_value();
    double worst_eq = 0.0;
    for (std::size_t n = 0; n < run.trace.rho.size(); ++n) {
        const double lhs = F.eval(run.trace.rho[n]).finite_value();
        const double rhs = F0 - static_cast<double>(n) * a;
        g.require(lhs <= rhs, "F(rho_n) > F(rho_0) - n ln 2 at n=" + std::to_string(n));
        worst_eq = std::max(worst_eq, std::fabs(lhs - rhs));
    }
    g.require(worst_eq <= 1e-12, "equality drifts beyond 1e-12");

    // Every verified (a,F)-contractive finite-space run obeys the ladder with
    // no tolerance, in extended-real arithmetic.
    std::mt19937_64 rng(90210);
    const double af = 0.05;
    std::size_t checked_runs = 0;
    for (std::size_t c = 0; c < 60; ++c) {
        const auto fc = testgen::random_finite_case(rng, c, 10);
        const auto pairs = exhaustive_pairs(fc.space);
        const auto T = table_map(fc.table);
        const auto rep = check_aF_contractive(
            fc.space, T, F, af, std::span<const std::pair<std::size_t, std::size_t>>(pairs),
            CheckMode::exhaustive(pairs.size()));
        if (!rep.holds) continue;
        PicardOptions opt;
        opt.eps = 1e-9;
        opt.max_iter = 64;
        for (std::size_t s = 0; s < fc.space.size(); ++s) {
            const auto run2 = picard_iterate(fc.space, T, s, opt);
            if (run2.trace.rho.empty() || run2.trace.rho[0] == 0.0) continue;
            ++checked_runs;
            const ExtReal F0f = F.eval(run2.trace.rho[0]);
            for (std::size_t n = 0; n < run2.trace.rho.size(); ++n) {
                const ExtReal lhs = F.eval(run2.trace.rho[n]);
                const ExtReal rhs = F0f - static_cast<double>(n) * af;
                g.require(ext_compare(lhs, rhs) != std::strong_ordering::greater,
                          "finite-space ladder violated");
            }
        }
    }
    g.require(checked_runs >= 10, "too few verified finite-space runs exercised");
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |equality drift| %.2e, %zu finite runs", worst_eq,
                  checked_runs);
    report(3, "cumulative contraction ladder, no tolerance", g, detail);
}

void criterion_4() {
    Gate g;
    const auto zs = default_zero_seq();
    g.require(classify_regularity(make_neg_power(0.5), 0.75, zs).status == Regularity::Regular,
              "neg_power(0.5) at k=0.75 not Regular");
    g.require(classify_regularity(make_neg_power(1.0), 0.9, zs).status == Regularity::NotRegular,
              "neg_power(1) at k=0.9 not NotRegular");
    g.require(classify_regularity(make_neg_power(2.0), 0.99, zs).status == Regularity::NotRegular,
              "neg_power(2) at k=0.99 not NotRegular");
    g.require(classify_regularity(make_log(), 0.5, zs).status == Regularity::Regular,
              "log at k=0.5 not Regular");

    // delta = 0.5 contractive run with a tail-bound certificate.
    RealLine line;
    const auto F = make_neg_power(0.5);
    const double a = 0.25, k = 0.75;
    const auto pairs = sample_pairs_box(-1.0, 1.0, 400, 4242);
    const auto rep = check_aF_contractive(line, affine(0.5), F, a,
                                          std::span<const std::pair<double, double>>(pairs),
                                          CheckMode::sampled(pairs.size(), 4242));
    g.require(rep.holds, "the delta=0.5 test map is not verified contractive on the box");

    PicardOptions opt;
    opt.eps = 1e-12;
    opt.max_iter = 60;
    const auto run = picard_iterate(line, affine(0.5), 1.0, opt);
    TailBoundCertificate cert;
    try {
        cert = tail_bound_regular(run, F, a, k);
    } catch (const Error& e) {
        g.require(false, std::string("certificate withheld: ") + e.what());
        report(4, "regularity classifier and tail-bound certificate", g);
        return;
    }
    g.require(!cert.trivial, "certificate unexpectedly trivial");
    g.require(cert.rho_bound_holds, "recorded rho violates the certified bound");
    for (std::size_t n = std::max<std::size_t>(cert.from_rank, 1); n < run.trace.rho.size(); ++n)
        g.require(run.trace.rho[n] <=
                      std::pow(cert.beta / (a * static_cast<double>(n)), 1.0 / k),
                  "pointwise tail bound fails at n=" + std::to_string(n));
    char detail[96];
    std::snprintf(detail, sizeof(detail), "beta=%.4f from_rank=%zu tail_sum<=%.3e", cert.beta,
                  cert.from_rank, cert.tail_sum_bound);
    report(4, "regularity classifier and tail-bound certificate", g, detail);
}

void criterion_5() {
    Gate g;
    const Tolerance tight{1e-12, 0.0, 200};
    const auto phi = derived_comparison(make_neg_power(1.0), 1.0, tight);

    const double ladder[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
    const double grid[] = {0.5, 1.0, 2.0};
    const auto verdicts = check_matkowski(phi, grid, 1'000'000, ladder);
    for (const auto& v : verdicts)
        g.require(v.status == MatkowskiStatus::Verified,
                  "Matkowski check inconclusive at t=" + std::to_string(v.t));

    const auto series = phi_series(phi, 1.0, {}, 100'000);
    g.require(series.status != SeriesStatus::Converged,
              "Phi series unexpectedly converged for the harmonic iterates");
    g.require(series.value >= 10.0, "partial sum below the harmonic growth floor");

    char detail[96];
    std::snprintf(detail, sizeof(detail), "series status %s, partial %.3f",
                  series.status == SeriesStatus::Diverging ? "diverging" : "inconclusive",
                  series.value);
    report(5, "admissible but not tele-admissible witness", g, detail);
}

void criterion_6() {
    Gate g;
    RealLine line;
    const auto trace = make_trace(line, harmonic_walk(5000));
    WitnessExtraction w;
    try {
        w = extract_witness(line, trace, 1.0, {});
    } catch (const Error& e) {
        g.require(false, std::string("extraction failed: ") + e.what());
        report(6, "rank-sequence witness extraction", g);
        return;
    }
    g.require(w.m_seq.size() >= 4, "too few ranks extracted");
    g.require(w.m_seq[0] == 0 && w.n_seq[0] == 2, "m(0), n(0) differ from the direct computation");
    g.require(w.m_seq[1] == 1 && w.n_seq[1] == 4, "m(1), n(1) differ from the direct computation");
    g.require(w.overshoot_all, "an extracted pair fails d > eta");
    g.require(w.gap_all, "a rank beyond j_eta fails the gap property");
    g.require(w.trend_overshoot > 0.0, "overshoot trend is not positive");
    g.require(w.trend_overshoot <= 0.01, "overshoot trend above 0.01");
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%zu ranks, j_eta=%zu, trend %.2e", w.m_seq.size(),
                  w.j_eta.value_or(0), w.trend_overshoot);
    report(6, "rank-sequence witness extraction", g, detail);
}

void criterion_7() {
    Gate g;
    const double t_start = now_seconds();
    std::mt19937_64 rng(777);
    const auto F = make_log();
    const double a = 0.05;
    std::size_t holds_count = 0;

    for (std::size_t c = 0; c < 200; ++c) {
        const auto fc = testgen::random_finite_case(rng, c, 12);
        const auto pairs = exhaustive_pairs(fc.space);
        const auto T = table_map(fc.table);
        const auto rep = check_aF_contractive(
            fc.space, T, F, a, std::span<const std::pair<std::size_t, std::size_t>>(pairs),
            CheckMode::exhaustive(pairs.size()));
        if (!rep.holds) continue;
        ++holds_count;

        const auto fixed = brute_force_fixed_points(fc.space.size(), fc.table);
        g.require(fixed.size() == 1, "verified contractive map without a unique fixed point");
        if (fixed.size() != 1) break;

        auto [strict, nonexp] = check_strict_and_nonexpansive(
            fc.space, T, std::span<const std::pair<std::size_t, std::size_t>>(pairs),
            CheckMode::exhaustive(pairs.size()));
        g.require(strict.holds, "strict contraction fails where the aF check holds");
        g.require(nonexp.holds, "nonexpansiveness fails where the aF check holds");

        PicardOptions opt;
        opt.eps = 1e-9;
        opt.max_iter = 64;
        for (std::size_t s = 0; s < fc.space.size(); ++s) {
            const auto run = picard_iterate(fc.space, T, s, opt);
            g.require(run.status == RunStatus::FixedPointHit,
                      "orbit failed to land exactly on the fixed point");
            g.require(run.last_point() == fixed[0], "orbit landed on a different point");
        }
    }
    g.require(holds_count >= 40, "too few contractive cases in the population: " +
                                     std::to_string(holds_count));
    const double elapsed = now_seconds() - t_start;
    g.require(elapsed < 10.0, "runtime " + std::to_string(elapsed) + "s exceeds 10s");
    char detail[96];
    std::snprintf(detail, sizeof(detail), "200 spaces, %zu verified contractive, %.2fs",
                  holds_count, elapsed);
    report(7, "brute-force oracle equivalence on finite spaces", g, detail);
}

void criterion_8() {
    Gate g;
    const double c = 0.1;
    const auto F = make_step_log(1.0, c);
    const double a = 0.69;
    RealLine line;

    const auto pairs = sample_pairs_box(-1.5, 4.5, 400, 808);
    const auto rep = check_aF_contractive(line, affine(0.5), F, a,
                                          std::span<const std::pair<double, double>>(pairs),
                                          CheckMode::sampled(pairs.size(), 808));
    g.require(rep.holds, "the halving map is not verified (a, step_log)-contractive");

    PicardOptions opt;
    opt.eps = 1e-9;
    opt.max_iter = 200;
    const std::vector<double> starts{-1.0, 0.3, 1.0, 4.0};
    const auto cls = classify_operator(line, affine(0.5), std::span<const double>(starts), opt);
    g.require(cls.picard_evidence, "a run failed to settle");
    g.require(cls.strong_evidence, "a limit is not eps-fixed");
    g.require(cls.globally_strong_evidence, "limits disagree beyond eps");

    const auto [left, right] = lateral_limits(F, c);
    const double jump = right.finite_value() - left.finite_value();
    g.require(std::fabs(jump - 1.0) <= 1e-6, "lateral jump at c is not 1 within 1e-6");

    char detail[96];
    std::snprintf(detail, sizeof(detail), "jump at c: %.9f", jump);
    report(8, "discontinuous F still yields globally strong Picard evidence", g, detail);
}

void criterion_9() {
    Gate g;
    const auto grid = log_grid(0.01, 10.0, 60);
    const auto zs = default_zero_seq();

    const WardowskiFunction families[] = {make_log(), make_log_poly(1, 1, 1), make_neg_power(1.0),
                                          make_step_log(1.0, 1.0)};
    for (const auto& F : families) {
        const auto rep = check_axioms(F, grid, zs);
        g.require(rep.all_pass(), F.name + " fails the axiom suite");
        g.require(rep.order_reflect_pass, F.name + " fails the order-reflection check");
    }

    // Constructed violation 1: a decreasing function trips the monotonicity
    // axiom with a witness pair.
    WardowskiFunction dec;
    dec.eval = [](double t) -> ExtReal {
        return t == 0.0 ? ExtReal::neg_inf() : ExtReal(-t);
    };
    dec.name = "decreasing";
    const auto rep_dec = check_axioms(dec, grid, zs);
    g.require(!rep_dec.monotone_pass && rep_dec.monotone_witness.has_value(),
              "decreasing violation not caught with a witness");
    if (rep_dec.monotone_witness)
        g.require(rep_dec.monotone_witness->first < rep_dec.monotone_witness->second,
                  "monotone witness is not an ordered grid pair");

    // Constructed violation 2: ln(1+t) stays bounded near zero and must fail
    // the descent ladder at its first bound.
    WardowskiFunction bounded;
    bounded.eval = [](double t) -> ExtReal {
        return t == 0.0 ? ExtReal::neg_inf() : ExtReal(std::log1p(t));
    };
    bounded.name = "bounded";
    const auto rep_bounded = check_axioms(bounded, grid, zs);
    g.require(!rep_bounded.descent_pass && rep_bounded.descent_failed_bound == -10.0,
              "bounded-below violation not caught at B=-10");

    // Constructed violation 3: injected diverging F-values over a stalled
    // sequence defeat the descent-forces-vanishing implication.
    std::vector<std::pair<double, ExtReal>> samples;
    for (int i = 1; i <= 7; ++i) samples.emplace_back(2.0, ExtReal(-std::pow(10.0, i)));
    const auto l2 = vanishing_check(samples);
    g.require(!l2.held && l2.failed_eps.has_value() && l2.witness_index.has_value(),
              "injected vanishing-check violation not detected with a witness");

    report(9, "axiom suite over the built-in families and constructed violations", g);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures == 0)
        std::printf("acceptance: all 9 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
