#include "wardowski/metric.hpp"

#include <fstream>
#include <sstream>

namespace wardowski {

namespace {

[[noreturn]] void reject(const std::string& what) {
    throw InvalidParameter("FiniteMetricSpace: " + what);
}

} // namespace

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> matrix)
    : n_(n), m_(std::move(matrix)) {
    if (n_ == 0) reject("n must be positive");
    if (m_.size() != n_ * n_) reject("matrix size does not match n");
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            const double d = m_[i * n_ + j];
            if (!std::isfinite(d) || d < 0.0)
                reject("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not a nonnegative real");
            if (i == j && d != 0.0)
                reject("nonzero diagonal at " + std::to_string(i));
            if (i != j && d == 0.0)
                reject("zero distance between distinct points " + std::to_string(i) + "," + std::to_string(j));
        }
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if (m_[i * n_ + j] != m_[j * n_ + i])
                reject("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                if (m_[i * n_ + k] > m_[i * n_ + j] + m_[j * n_ + k])
                    reject("triangle violation at (" + std::to_string(i) + "," +
                           std::to_string(j) + "," + std::to_string(k) + ")");
}

FiniteMetricSpace FiniteMetricSpace::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open matrix file: " + file.string());
    std::size_t n = 0;
    if (!(in >> n)) throw IoError("matrix file: missing size line: " + file.string());
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n * n; ++i)
        if (!(in >> m[i]))
            throw IoError("matrix file: expected " + std::to_string(n * n) +
                          " entries: " + file.string());
    return FiniteMetricSpace(n, std::move(m));
}

void FiniteMetricSpace::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write matrix file: " + file.string());
    out << n_ << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j)
            out << (j ? " " : "") << m_[i * n_ + j];
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + file.string());
}

FiniteMetricSpace FiniteMetricSpace::from_points(const EuclideanSpace& space,
                                                 std::span<const EuclideanSpace::Point> pts) {
    const std::size_t n = pts.size();
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = space.dist(pts[i], pts[j]);
    return FiniteMetricSpace(n, std::move(m));
}

} // namespace wardowski
