#pragma once

#include <functional>
#include <vector>

#include "stoklab/path.hpp"
#include "stoklab/rng.hpp"
#include "stoklab/stats.hpp"

namespace stoklab {

/// Piecewise-constant adapted integrand on a partition 0 = t_0 < ... < t_N.
/// The value on [t_{k-1}, t_k) is produced by a callable that sees only the
/// driving path up to t_{k-1}, so anticipation is impossible by shape.
struct SimpleIntegrand {
    std::vector<double> partition;
    std::function<double(std::size_t k, PathView prefix)> value_on; // k = 1..N

    static SimpleIntegrand constants(std::vector<double> partition, std::vector<double> values);
};

/// Running left-point integral of a simple integrand against a Brownian
/// path whose grid refines the partition. Exact at partition points.
Path ito_integral_simple(const SimpleIntegrand& e, const Path& bm);

/// Left-endpoint Riemann sum of f(t, path-prefix) against the increments of
/// bm, on bm's own grid.
Path ito_integral_leftpoint(const std::function<double(double, PathView)>& f, const Path& bm);

/// Midpoint-weighted sum (f(t_{k-1}, .) + f(t_k, .))/2 * dB_k on bm's grid.
Path stratonovich_integral_midpoint(const std::function<double(double, PathView)>& f,
                                    const Path& bm);

/// Empirical second moment of the integral at T (lhs) against the exact
/// time integral of the given second-moment function (rhs).
struct IsometryAudit {
    McEstimate lhs;
    double rhs;
};

/// second_moment(s) = E[e_s^2]; rhs integrates it with left-point weights
/// over the partition (exact when it is constant per cell).
IsometryAudit isometry_audit(const SimpleIntegrand& e,
                             const std::function<double(double)>& second_moment,
                             std::int64_t n_paths, std::size_t steps_per_cell,
                             RandomStream family);

/// M_t = exp( int g dB - 1/2 int g^2 ds ) along the path (left-point sums).
Path exponential_supermartingale(const std::function<double(double, PathView)>& g,
                                 const Path& bm);

} // namespace stoklab
