#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wardowski/errors.hpp"

namespace wardowski {

template <typename S>
concept MetricSpaceLike = requires(const S& s, const typename S::Point& a, const typename S::Point& b) {
    typename S::Point;
    { s.dist(a, b) } -> std::convertible_to<double>;
};

/// The real line with the absolute-value metric.
struct RealLine {
    using Point = double;
    double dist(double a, double b) const { return std::fabs(a - b); }
};

/// Euclidean n-space over std::vector coordinates.
class EuclideanSpace {
public:
    using Point = std::vector<double>;

    explicit EuclideanSpace(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw InvalidParameter("EuclideanSpace: dimension must be positive");
    }

    std::size_t dim() const { return dim_; }

    double dist(const Point& a, const Point& b) const {
        if (a.size() != dim_ || b.size() != dim_)
            throw InvalidParameter("EuclideanSpace: point dimension mismatch");
        double s = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    }

private:
    std::size_t dim_;
};

/// An explicit finite metric space given by its distance matrix.
///
/// Construction validates all three axioms exhaustively: zero diagonal with
/// strictly positive off-diagonal entries, symmetry, and every ordered
/// triangle triple. Rejection is exact, no tolerance is applied.
class FiniteMetricSpace {
public:
    using Point = std::size_t;

    FiniteMetricSpace(std::size_t n, std::vector<double> matrix);

    std::size_t size() const { return n_; }

    double dist(std::size_t i, std::size_t j) const { return m_[i * n_ + j]; }

    /// Reads the plain-text format: first line n, then n rows of n
    /// space-separated decimals.
    static FiniteMetricSpace load(const std::filesystem::path& file);
    void save(const std::filesystem::path& file) const;

    /// Distance matrix of the pairwise distances of embedded points.
    static FiniteMetricSpace from_points(const EuclideanSpace& space,
                                         std::span<const EuclideanSpace::Point> pts);

private:
    std::size_t n_;
    std::vector<double> m_;
};

/// A recorded orbit prefix: points plus the consecutive distances
/// rho_n = d(x_n, x_{n+1}). Build through make_trace so rho always equals the
/// recomputed distances.
template <typename P>
struct SequenceTrace {
    std::vector<P> points;
    std::vector<double> rho;

    std::size_t length() const { return points.size(); }
};

template <MetricSpaceLike S>
SequenceTrace<typename S::Point> make_trace(const S& space, std::vector<typename S::Point> points) {
    if (points.empty()) throw InvalidParameter("make_trace: need at least one point");
    SequenceTrace<typename S::Point> t;
    t.rho.reserve(points.size() - 1);
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        t.rho.push_back(space.dist(points[i], points[i + 1]));
    t.points = std::move(points);
    return t;
}

/// Sum of the recorded consecutive distances (the telescopic partial sum).
template <typename P>
double tele_sum(const SequenceTrace<P>& trace) {
    double s = 0.0;
    for (double r : trace.rho) s += r;
    return s;
}

/// Cauchy evidence over a finite prefix. The verdict quantifies only over
/// recorded pairs, hence the prefix_only flag.
struct CauchyVerdict {
    double eps = 0.0;
    bool cauchy = false;
    std::size_t rank = 0;                                      // least admissible j when cauchy
    std::optional<std::pair<std::size_t, std::size_t>> witness; // violating pair otherwise
    bool prefix_only = true;
};

/// Least rank j such that every recorded pair j <= m < n has
/// d(x_m, x_n) <= eps. When no rank works, the witness is the
/// lexicographically least violating pair among pairs at the largest
/// candidate rank.
template <MetricSpaceLike S>
CauchyVerdict cauchy_verdict(const S& space, const SequenceTrace<typename S::Point>& trace, double eps) {
    if (trace.length() < 2) throw PreconditionViolated("cauchy_verdict: need >= 2 points");
    if (!(eps > 0.0)) throw InvalidParameter("cauchy_verdict: eps must be positive");
    const std::size_t N = trace.length();

    // worst(m) = max over n > m of d(x_m, x_n); rank j works iff the suffix
    // maximum of worst from j stays <= eps.
    std::vector<double> worst(N - 1, 0.0);
    for (std::size_t m = 0; m + 1 < N; ++m) {
        double w = 0.0;
        for (std::size_t n = m + 1; n < N; ++n)
            w = std::max(w, space.dist(trace.points[m], trace.points[n]));
        worst[m] = w;
    }

    CauchyVerdict v;
    v.eps = eps;
    double suffix = 0.0;
    std::size_t least = N - 1;  // sentinel: none found
    for (std::size_t j = N - 1; j-- > 0;) {
        suffix = std::max(suffix, worst[j]);
        if (suffix <= eps) least = j;
    }
    if (least < N - 1) {
        v.cauchy = true;
        v.rank = least;
        return v;
    }

    v.cauchy = false;
    const std::size_t j_last = N - 2;  // largest rank that still has a pair
    for (std::size_t n = j_last + 1; n < N; ++n) {
        if (space.dist(trace.points[j_last], trace.points[n]) > eps) {
            v.witness = {j_last, n};
            break;
        }
    }
    return v;
}

/// Semi-Cauchy evidence: whether the consecutive distances fall and stay
/// strictly below eps on the recorded prefix.
struct SemiCauchyVerdict {
    double eps = 0.0;
    bool holds = false;
    std::size_t from_rank = 0;  // first rank of the all-below tail
    bool prefix_only = true;
};

template <typename P>
SemiCauchyVerdict semi_cauchy_verdict(const SequenceTrace<P>& trace, double eps) {
    if (trace.length() < 2) throw PreconditionViolated("semi_cauchy_verdict: need >= 2 points");
    if (!(eps > 0.0)) throw InvalidParameter("semi_cauchy_verdict: eps must be positive");
    SemiCauchyVerdict v;
    v.eps = eps;
    std::size_t first_bad_after = 0;  // one past the last rho >= eps
    for (std::size_t i = 0; i < trace.rho.size(); ++i)
        if (!(trace.rho[i] < eps)) first_bad_after = i + 1;
    if (first_bad_after < trace.rho.size()) {
        v.holds = true;
        v.from_rank = first_bad_after;
    }
    return v;
}

} // namespace wardowski
