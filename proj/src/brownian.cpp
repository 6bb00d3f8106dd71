#include "stoklab/brownian.hpp"

#include <cmath>
#include <stdexcept>

#include "stoklab/errors.hpp"

namespace stoklab {

Path sample_bm_increments(RandomStream stream, const std::vector<double>& grid) {
    check_strictly_increasing(grid, "sample_bm_increments");
    if (grid.front() != 0.0)
        throw std::invalid_argument("sample_bm_increments: grid must start at 0");
    Path p;
    p.times = grid;
    p.values.resize(grid.size());
    double b = 0.0;
    p.values[0] = 0.0;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        b += std::sqrt(grid[k] - grid[k - 1]) * stream.gaussian();
        p.values[k] = b;
    }
    return p;
}

namespace {

// Node-addressed variates: counter 0 seeds the endpoint value B_1, and the
// midpoint of the k-th interval at refinement level l (l >= 1) uses counter
// 2^(l-1) + k. The address depends only on the node, not on build order.
inline double node_gaussian(const DyadicBridgeTree& t, std::uint64_t index) {
    return RandomStream{t.master_seed, t.stream_id, 0}.gaussian_at(index);
}

} // namespace

DyadicBridgeTree sample_bm_dyadic(RandomStream stream, int depth) {
    if (depth < 0) throw std::invalid_argument("sample_bm_dyadic: depth must be >= 0");
    if (depth > 24) throw ResourceLimitError("sample_bm_dyadic: depth must be <= 24");
    DyadicBridgeTree t;
    t.master_seed = stream.master_seed;
    t.stream_id = stream.stream_id;
    t.depth = 0;
    t.values = {0.0, node_gaussian(t, 0)};
    while (t.depth < depth) t = refine_dyadic(t);
    return t;
}

DyadicBridgeTree refine_dyadic(const DyadicBridgeTree& tree) {
    if (tree.depth >= 24) throw ResourceLimitError("refine_dyadic: depth must be <= 24");
    DyadicBridgeTree out;
    out.master_seed = tree.master_seed;
    out.stream_id = tree.stream_id;
    out.depth = tree.depth + 1;
    const std::size_t n_old = tree.values.size() - 1; // 2^depth intervals
    out.values.resize(2 * n_old + 1);

    // Midpoint over an interval of length L: (left+right)/2 + N(0, L/4);
    // both new half-increments then have variance L/2 and are independent.
    const double half_sd = 0.5 * std::sqrt(std::pow(2.0, -tree.depth));
    const std::uint64_t base = static_cast<std::uint64_t>(1) << tree.depth; // 2^(l-1), l = out.depth
    for (std::size_t k = 0; k < n_old; ++k) {
        const double left = tree.values[k];
        const double right = tree.values[k + 1];
        out.values[2 * k] = left;
        out.values[2 * k + 1] = 0.5 * (left + right) + half_sd * node_gaussian(tree, base + k);
    }
    out.values.back() = tree.values.back();
    return out;
}

Path DyadicBridgeTree::to_path() const {
    Path p;
    const std::size_t n = values.size();
    p.times.resize(n);
    p.values = values;
    const double dt = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p.times[i] = dt * static_cast<double>(i);
    p.times.back() = 1.0;
    return p;
}

double max_law_cdf(double L, double t) {
    if (L < 0.0 || !(t > 0.0))
        throw std::invalid_argument("max_law_cdf: need L >= 0 and t > 0");
    return 2.0 * (1.0 - normal_cdf(L / std::sqrt(t)));
}

double sample_first_passage(RandomStream& stream, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("sample_first_passage: a must be > 0");
    const double z = stream.gaussian(); // never exactly 0 (uniforms avoid 1/2 exactly)
    return a * a / (z * z);
}

double sample_line_hit_2d(RandomStream& stream) {
    const double tau = sample_first_passage(stream, 1.0);
    return std::sqrt(tau) * stream.gaussian();
}

Path reflect_at_level(const Path& path, double L) {
    Path out = path;
    std::size_t cross = path.size();
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (path.values[i] >= L) {
            cross = i;
            break;
        }
    }
    for (std::size_t i = cross + 1; i < path.size(); ++i)
        out.values[i] = 2.0 * L - path.values[i];
    return out;
}

} // namespace stoklab
