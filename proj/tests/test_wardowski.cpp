#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "wardowski/wardowski_function.hpp"

using namespace wardowski;

namespace {

std::vector<WardowskiFunction> builtin_families() {
    std::vector<WardowskiFunction> fs;
    fs.push_back(make_log());
    fs.push_back(make_log_poly(1.0, 1.0, 1.0));
    fs.push_back(make_neg_power(1.0));
    fs.push_back(make_neg_power(0.5));
    fs.push_back(make_step_log(1.0, 1.0));
    return fs;
}

WardowskiFunction decreasing_fake() {
    WardowskiFunction F;
    F.eval = [](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(-t);
    };
    F.name = "decreasing_fake";
    return F;
}

WardowskiFunction bounded_fake() {
    WardowskiFunction F;  // ln(1+t) with the -inf value forced at 0
    F.eval = [](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        return ExtReal(std::log1p(t));
    };
    F.name = "bounded_fake";
    return F;
}

} // namespace

TEST_SUITE("wardowski") {

TEST_CASE("family point values") {
    const auto lp = make_log_poly(1, 1, 1);
    CHECK(lp.eval(1.0).finite_value() == doctest::Approx(std::log(2.0) + 1.0).epsilon(1e-14));
    CHECK(lp.eval(0.0).is_neg_inf());

    const auto np1 = make_neg_power(1.0);
    CHECK(np1.eval(2.0).finite_value() == doctest::Approx(-0.5).epsilon(1e-14));
    const auto nph = make_neg_power(0.5);
    CHECK(nph.eval(4.0).finite_value() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(np1.eval(0.0).is_neg_inf());

    const auto lg = make_log();
    CHECK(lg.eval(1.0).finite_value() == 0.0);
    CHECK(lg.eval(std::exp(1.0)).finite_value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lg.eval(0.0).is_neg_inf());

    const auto st = make_step_log(1.0, 1.0);
    CHECK(st.eval(0.5).finite_value() == doctest::Approx(std::log(0.5)).epsilon(1e-14));
    CHECK(st.eval(1.0).finite_value() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(!st.left_continuous);
    CHECK(st.discontinuities == std::vector<double>{1.0});
}

TEST_CASE("constructors reject bad parameters") {
    CHECK_THROWS_AS(make_log_poly(0, 1, 1), InvalidParameter);
    CHECK_THROWS_AS(make_log_poly(1, -1, 1), InvalidParameter);
    CHECK_THROWS_AS(make_neg_power(0), InvalidParameter);
    CHECK_THROWS_AS(make_step_log(0, 1), InvalidParameter);
    CHECK_THROWS_AS(make_step_log(1, 0), InvalidParameter);
}

TEST_CASE("log_poly strictly increases on the sample grid") {
    const auto F = make_log_poly(1, 1, 1);
    const auto grid = log_grid(0.1, 10.0, 100);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        CHECK(F.eval(grid[i]) < F.eval(grid[i + 1]));
}

TEST_CASE("lateral limits at a continuous point") {
    const auto F = make_log();
    const auto [left, right] = lateral_limits(F, 1.0);
    CHECK(std::fabs(left.finite_value()) <= 1e-9);
    CHECK(std::fabs(right.finite_value()) <= 1e-9);
}

TEST_CASE("lateral limits across the step") {
    const auto F = make_step_log(1.0, 1.0);
    const auto [left, right] = lateral_limits(F, 1.0);
    CHECK(std::fabs(left.finite_value() - 0.0) <= 1e-9);
    CHECK(std::fabs(right.finite_value() - 1.0) <= 1e-9);
    // strict increase across the jump: sup of the left branch stays below F(1)
    CHECK(F.eval(1.0 - 1e-12) < F.eval(1.0));
}

TEST_CASE("lateral limits match F off the declared discontinuities") {
    for (const auto& F : builtin_families()) {
        for (double t : log_grid(0.05, 8.0, 40)) {
            bool declared = false;
            for (double d : F.discontinuities)
                if (t == d) declared = true;
            if (declared) continue;
            const auto [left, right] = lateral_limits(F, t);
            const double ft = F.eval(t).finite_value();
            CHECK(std::fabs(left.finite_value() - ft) <= 1e-6 * std::max(1.0, std::fabs(ft)));
            CHECK(std::fabs(right.finite_value() - ft) <= 1e-6 * std::max(1.0, std::fabs(ft)));
        }
    }
}

TEST_CASE("step_log has exactly one jump of the declared height") {
    const auto F = make_step_log(0.75, 0.3);
    std::size_t jumps = 0;
    auto probe = log_grid(0.05, 8.0, 60);
    probe.push_back(0.3);
    std::sort(probe.begin(), probe.end());
    for (double t : probe) {
        const auto [left, right] = lateral_limits(F, t);
        const double gap = right.finite_value() - left.finite_value();
        if (gap > 1e-9) {
            ++jumps;
            CHECK(t == 0.3);
            CHECK(gap == doctest::Approx(0.75).epsilon(1e-9));
        }
    }
    CHECK(jumps == 1);
}

TEST_CASE("check_axioms passes for every built-in family") {
    const auto grid = log_grid(0.01, 10.0, 60);
    const auto zs = default_zero_seq();
    for (const auto& F : builtin_families()) {
        const auto rep = check_axioms(F, grid, zs);
        INFO(F.name);
        CHECK(rep.pole_pass);
        CHECK(rep.monotone_pass);
        CHECK(rep.descent_pass);
        CHECK(rep.order_reflect_pass);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("check_axioms flags a decreasing function with a witness pair") {
    const auto grid = log_grid(0.01, 10.0, 60);
    const auto rep = check_axioms(decreasing_fake(), grid, default_zero_seq());
    CHECK(!rep.monotone_pass);
    REQUIRE(rep.monotone_witness.has_value());
    const auto [t, s] = *rep.monotone_witness;
    CHECK(t < s);
    CHECK(!(ExtReal(-t) < ExtReal(-s)));
    CHECK(!rep.order_reflect_pass);  // decreasing also breaks the contrapositive
}

TEST_CASE("check_axioms flags a function bounded below near zero") {
    const auto rep = check_axioms(bounded_fake(), log_grid(0.01, 10.0, 60), default_zero_seq());
    CHECK(!rep.descent_pass);
    REQUIRE(rep.descent_failed_bound.has_value());
    CHECK(*rep.descent_failed_bound == -10.0);
    CHECK(rep.pole_pass);
    CHECK(rep.monotone_pass);
}

TEST_CASE("check_axioms flags a finite value at zero") {
    WardowskiFunction F;
    F.eval = [](double t) -> ExtReal { return ExtReal(std::log1p(t)); };
    F.name = "no_pole";
    const auto rep = check_axioms(F, log_grid(0.01, 10.0, 60), default_zero_seq());
    CHECK(!rep.pole_pass);
    CHECK(rep.pole_witness == 0.0);
}

TEST_CASE("non-strict functions pass only the weakened monotone check") {
    WardowskiFunction F;  // flat on [1, 2], increasing elsewhere
    F.eval = [](double t) -> ExtReal {
        if (t == 0.0) return ExtReal::neg_inf();
        if (t <= 1.0) return ExtReal(std::log(t));
        if (t <= 2.0) return ExtReal(0.0);
        return ExtReal(std::log(t / 2.0));
    };
    F.name = "plateau";
    const auto grid = log_grid(0.01, 10.0, 60);
    const auto zs = default_zero_seq();

    F.strict = true;
    CHECK(!check_axioms(F, grid, zs).monotone_pass);
    F.strict = false;
    CHECK(check_axioms(F, grid, zs).monotone_pass);
}

TEST_CASE("check_axioms validates its own inputs") {
    const auto F = make_log();
    const std::vector<double> bad_grid{1.0, 0.5};
    CHECK_THROWS_AS(check_axioms(F, bad_grid, default_zero_seq()), InvalidParameter);
    const std::vector<double> bad_seq{0.5, 0.5};
    const auto grid = log_grid(0.1, 1.0, 4);
    CHECK_THROWS_AS(check_axioms(F, grid, bad_seq), InvalidParameter);
}

TEST_CASE("regularity classification of the built-ins") {
    const auto zs = default_zero_seq();
    CHECK(classify_regularity(make_log(), 0.5, zs).status == Regularity::Regular);
    CHECK(classify_regularity(make_neg_power(0.5), 0.75, zs).status == Regularity::Regular);
    CHECK(classify_regularity(make_neg_power(1.0), 0.9, zs).status == Regularity::NotRegular);
    CHECK(classify_regularity(make_neg_power(2.0), 0.99, zs).status == Regularity::NotRegular);
    // k equal to delta keeps |t^k F(t)| pinned at 1: no verdict either way
    CHECK(classify_regularity(make_neg_power(0.5), 0.5, zs).status == Regularity::Inconclusive);
    CHECK_THROWS_AS(classify_regularity(make_log(), 1.0, zs), InvalidParameter);
}

TEST_CASE("neg_power regularity matches the closed form") {
    const auto zs = default_zero_seq();
    for (double delta : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
        const auto F = make_neg_power(delta);
        bool regular_somewhere = false;
        for (double k : {0.1, 0.3, 0.45, 0.6, 0.85, 0.95}) {
            if (k == delta) continue;
            const auto v = classify_regularity(F, k, zs);
            if (v.status == Regularity::Regular) {
                regular_somewhere = true;
                CHECK(k > delta);  // t^(k-delta) -> 0 needs k > delta
            }
            if (v.status == Regularity::NotRegular) CHECK(k < delta);
        }
        CHECK(regular_somewhere == (delta < 1.0));
    }
}

TEST_CASE("vanishing check holds for a genuine Wardowski descent") {
    std::vector<double> ts;
    for (std::size_t n = 1; n <= 5000; ++n) ts.push_back(1.0 / static_cast<double>(n));
    const double bounds[] = {-1, -2, -4, -8};
    const double epss[] = {0.5, 0.1, 0.01, 1e-3};
    const auto res = vanishing_check(make_log(), ts, bounds, epss);
    CHECK(res.held);
    CHECK(!res.failed_eps.has_value());
}

TEST_CASE("vanishing check is vacuously true when the premise fails") {
    const std::vector<double> ts(50, 2.0);
    const auto res = vanishing_check(make_log(), ts);
    CHECK(res.held);
}

TEST_CASE("vanishing check detects an injected violation") {
    std::vector<std::pair<double, ExtReal>> samples;
    for (int i = 1; i <= 7; ++i)
        samples.emplace_back(2.0, ExtReal(-std::pow(10.0, i)));  // F pretends to diverge, t stays 2
    const auto res = vanishing_check(samples);
    CHECK(!res.held);
    REQUIRE(res.failed_eps.has_value());
    CHECK(*res.failed_eps == 0.1);
    REQUIRE(res.witness_index.has_value());
    CHECK(*res.witness_index == samples.size() - 1);
}

TEST_CASE("order reflection holds exactly on random grids") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> U(1e-4, 20.0);
    for (const auto& F : builtin_families()) {
        std::vector<double> pts{0.0};
        for (int i = 0; i < 60; ++i) pts.push_back(U(rng));
        for (double t : pts)
            for (double s : pts)
                if (F.eval(t) < F.eval(s)) CHECK(t < s);
    }
}

} // TEST_SUITE
