#pragma once

#include <cstdint>
#include <vector>

#include "stoklab/path.hpp"
#include "stoklab/rng.hpp"

namespace stoklab {

/// Standard Brownian path on the given grid (grid[0] must be 0): B_0 = 0,
/// increments independent N(0, dt). One stream variate per increment.
Path sample_bm_increments(RandomStream stream, const std::vector<double>& grid);

/// Brownian motion on [0,1] built by midpoint refinement. The variate used
/// at each dyadic node is addressed by the node's position, so refining a
/// tree never changes the values already built.
struct DyadicBridgeTree {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    int depth = 0;
    std::vector<double> values; // 2^depth + 1 nodes on k * 2^-depth

    Path to_path() const;
};

/// depth <= 24; uses the stream's identity for node-addressed variates.
DyadicBridgeTree sample_bm_dyadic(RandomStream stream, int depth);

/// One more midpoint level; existing nodes are preserved exactly.
DyadicBridgeTree refine_dyadic(const DyadicBridgeTree& tree);

/// P[sup_{s<=t} B_s >= L] = 2 (1 - Phi(L / sqrt(t))) for L >= 0, t > 0.
double max_law_cdf(double L, double t);

/// Exact draw of the first time standard BM reaches level a > 0, via the
/// identity tau = a^2 / Z^2 with Z standard normal.
double sample_first_passage(RandomStream& stream, double a);

/// First coordinate of a planar BM started at (0,1) when it first hits the
/// horizontal axis; the draw is sqrt(tau) * Z' with tau a unit-level first
/// passage. Cauchy distributed.
double sample_line_hit_2d(RandomStream& stream);

/// Mirror the path at level L after its first visit to [L, inf):
/// values before the crossing are unchanged, later ones map to 2L - v.
Path reflect_at_level(const Path& path, double L);

} // namespace stoklab
