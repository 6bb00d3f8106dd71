#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace stoklab {

/// A sampled scalar trajectory: strictly increasing times with aligned values.
struct Path {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const noexcept { return times.size(); }
    double front() const { return values.front(); }
    double back() const { return values.back(); }

    /// Validating factory.
    static Path make(std::vector<double> times, std::vector<double> values);
};

/// Non-owning prefix view of a path; integrands see only these.
struct PathView {
    std::span<const double> times;
    std::span<const double> values;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
    double back_time() const { return times.back(); }
    double back_value() const { return values.back(); }
};

inline PathView view_of(const Path& p) {
    return PathView{p.times, p.values};
}

/// First n points of p (n >= 1).
inline PathView prefix_of(const Path& p, std::size_t n) {
    return PathView{{p.times.data(), n}, {p.values.data(), n}};
}

/// A sampled trajectory in d dimensions; values stored row-major, one row per time.
struct PathNd {
    std::vector<double> times;
    std::size_t dim = 1;
    std::vector<double> values;

    std::size_t size() const noexcept { return times.size(); }
    const double* point(std::size_t i) const { return values.data() + i * dim; }
};

/// n_steps+1 equispaced points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t n_steps);

inline void check_strictly_increasing(const std::vector<double>& t, const char* who) {
    if (t.empty()) throw std::invalid_argument(std::string(who) + ": empty grid");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1]))
            throw std::invalid_argument(std::string(who) + ": times must be strictly increasing");
}

inline Path Path::make(std::vector<double> times, std::vector<double> values) {
    check_strictly_increasing(times, "Path");
    if (times.size() != values.size())
        throw std::invalid_argument("Path: times and values must have equal length");
    return Path{std::move(times), std::move(values)};
}

inline std::vector<double> uniform_grid(double t0, double t1, std::size_t n_steps) {
    if (!(t1 > t0)) throw std::invalid_argument("uniform_grid: t1 must exceed t0");
    std::vector<double> t(n_steps + 1);
    const double dt = (t1 - t0) / static_cast<double>(n_steps);
    for (std::size_t i = 0; i <= n_steps; ++i) t[i] = t0 + dt * static_cast<double>(i);
    t[n_steps] = t1;
    return t;
}

} // namespace stoklab
