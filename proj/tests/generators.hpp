#pragma once

// Seeded generators shared by the verifier tests and the acceptance suite.

#include <cmath>
#include <random>
#include <vector>

#include "wardowski/metric.hpp"

namespace testgen {

// Finite space from random points in a 3-d box. Degenerate (near-collinear or
// near-coincident) draws are rejected so the exact axiom validation in
// FiniteMetricSpace is never ulp-fragile.
inline wardowski::FiniteMetricSpace random_embedded_space(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> U(0.0, 10.0);
    for (;;) {
        std::vector<std::vector<double>> pts(n, std::vector<double>(3));
        for (auto& p : pts)
            for (auto& c : p) c = U(rng);

        wardowski::EuclideanSpace e3(3);
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if (e3.dist(pts[i], pts[j]) < 0.05) ok = false;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                for (std::size_t k = 0; k < n && ok; ++k) {
                    if (i == j || j == k || i == k) continue;
                    const double slack =
                        e3.dist(pts[i], pts[j]) + e3.dist(pts[j], pts[k]) - e3.dist(pts[i], pts[k]);
                    if (slack < 1e-6) ok = false;
                }
        if (!ok) continue;
        return wardowski::FiniteMetricSpace::from_points(e3, pts);
    }
}

// Geometric chain with power-of-two coordinates: distances and triangle
// equalities are exact in binary, so the exact validation accepts them.
inline wardowski::FiniteMetricSpace chain_space(std::mt19937_64& rng, std::size_t n) {
    const double c = std::ldexp(1.0, static_cast<int>(rng() % 3) - 1);  // 1/2, 1 or 2
    std::vector<double> coord(n);
    for (std::size_t i = 0; i < n; ++i) coord[i] = c * std::ldexp(1.0, -static_cast<int>(i));
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::fabs(coord[i] - coord[j]);
    return wardowski::FiniteMetricSpace(n, std::move(m));
}

enum class MapKind { Uniform, Constant, ChainShift, Identity };

inline std::vector<std::size_t> make_table(std::mt19937_64& rng, std::size_t n, MapKind kind) {
    std::vector<std::size_t> t(n);
    switch (kind) {
        case MapKind::Uniform:
            for (auto& v : t) v = rng() % n;
            break;
        case MapKind::Constant: {
            const std::size_t z = rng() % n;
            for (auto& v : t) v = z;
            break;
        }
        case MapKind::ChainShift:
            for (std::size_t i = 0; i < n; ++i) t[i] = (i + 1 < n) ? i + 1 : i;
            break;
        case MapKind::Identity:
            for (std::size_t i = 0; i < n; ++i) t[i] = i;
            break;
    }
    return t;
}

struct FiniteCase {
    wardowski::FiniteMetricSpace space;
    std::vector<std::size_t> table;
};

// Mixed population: embedded and chain spaces crossed with the map kinds, so
// both contractive and non-contractive cases occur.
inline FiniteCase random_finite_case(std::mt19937_64& rng, std::size_t index, std::size_t max_n) {
    const std::size_t n = 2 + rng() % (max_n - 1);
    const bool chain = index % 2 == 0;
    auto space = chain ? chain_space(rng, n) : random_embedded_space(rng, n);
    const MapKind kinds[] = {MapKind::Uniform, MapKind::Constant, MapKind::ChainShift,
                             MapKind::Identity};
    auto table = make_table(rng, n, kinds[index % 4]);
    return {std::move(space), std::move(table)};
}

} // namespace testgen
