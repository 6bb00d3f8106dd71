#pragma once

#include <cstdint>

namespace stoklab {

/// Counter-based deterministic random stream.
///
/// Every output is a keyed block function of (master_seed, stream_id,
/// counter), so a stream produces the same sequence on any host and any
/// thread count, and random access by counter is O(1). Distinct stream
/// ids give statistically independent sequences; parallel Monte Carlo
/// assigns one stream per trajectory (stream_id = base + path index).
struct RandomStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    std::uint64_t counter = 0;

    /// Raw 64-bit word at an absolute counter position (does not advance).
    std::uint64_t word_at(std::uint64_t n) const noexcept;

    /// Uniform in the open interval (0,1) at an absolute counter position.
    double uniform_at(std::uint64_t n) const noexcept;

    /// Standard normal at an absolute counter position.
    double gaussian_at(std::uint64_t n) const noexcept;

    std::uint64_t next_word() noexcept { return word_at(counter++); }
    double uniform() noexcept { return uniform_at(counter++); }
    double gaussian() noexcept { return gaussian_at(counter++); }

    /// Sibling stream with the same master seed.
    RandomStream spawn(std::uint64_t id) const noexcept {
        return RandomStream{master_seed, id, 0};
    }
};

/// Pure constructor; no global state is touched.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse of the standard normal CDF (Wichura's rational approximation,
/// relative error below 1e-15 on (0,1)). Deterministic, no rejection loop.
double normal_quantile(double p);

} // namespace stoklab
