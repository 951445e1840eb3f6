#include "wardowski/verifier.hpp"

#include <algorithm>
#include <random>

namespace wardowski {

std::string to_string(ContractionCondition c) {
    switch (c) {
        case ContractionCondition::AFContractive: return "aF";
        case ContractionCondition::PhiContractive: return "phi";
        case ContractionCondition::Strict: return "strict";
        case ContractionCondition::Nonexpansive: return "nonexpansive";
    }
    return "unknown";
}

std::vector<std::pair<std::size_t, std::size_t>> exhaustive_pairs(const FiniteMetricSpace& space) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t n = space.size();
    pairs.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<std::pair<double, double>> sample_pairs_box(double lo, double hi, std::size_t count,
                                                        std::uint64_t seed) {
    if (!(lo < hi)) throw InvalidParameter("sample_pairs_box: requires lo < hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = U(rng), y = U(rng);
        pairs.emplace_back(x, y);
    }
    return pairs;
}

std::vector<std::pair<std::vector<double>, std::vector<double>>> sample_pairs_box(
    const std::vector<double>& lo, const std::vector<double>& hi, std::size_t count,
    std::uint64_t seed) {
    if (lo.empty() || lo.size() != hi.size())
        throw InvalidParameter("sample_pairs_box: box bounds must be nonempty and equal-sized");
    for (std::size_t d = 0; d < lo.size(); ++d)
        if (!(lo[d] < hi[d])) throw InvalidParameter("sample_pairs_box: requires lo < hi per axis");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<double> x(lo.size()), y(lo.size());
        for (std::size_t d = 0; d < lo.size(); ++d) {
            std::uniform_real_distribution<double> U(lo[d], hi[d]);
            x[d] = U(rng);
            y[d] = U(rng);
        }
        pairs.emplace_back(std::move(x), std::move(y));
    }
    return pairs;
}

std::vector<std::size_t> brute_force_fixed_points(std::size_t n,
                                                  std::span<const std::size_t> table) {
    if (table.size() != n) throw InvalidParameter("brute_force_fixed_points: table size != n");
    std::vector<std::size_t> fixed;
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i] >= n) throw InvalidParameter("brute_force_fixed_points: table entry out of range");
        if (table[i] == i) fixed.push_back(i);
    }
    return fixed;
}

double propose_eta(std::span<const double> delta, double lo, double hi) {
    if (!(lo > 0.0) || !(lo < hi)) throw InvalidParameter("propose_eta: requires 0 < lo < hi");
    std::vector<double> cuts{lo};
    for (double d : delta)
        if (d > lo && d < hi) cuts.push_back(d);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    double best_mid = (lo + hi) / 2, best_gap = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double gap = cuts[i + 1] - cuts[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_mid = cuts[i] + gap / 2;
        }
    }
    for (double d : delta)
        if (d == best_mid) throw InvalidParameter("propose_eta: degenerate delta configuration");
    return best_mid;
}

} // namespace wardowski
