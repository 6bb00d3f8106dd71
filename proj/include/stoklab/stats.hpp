#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stoklab/rng.hpp"

namespace stoklab {

/// Monte Carlo estimate: sample mean, standard error, count and a
/// confidence half-width z * stderr (z defaults to 4 project-wide so the
/// acceptance suite's false-failure rate stays negligible).
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t n = 0;
    double ci_half_width = 0.0;

    static McEstimate from_moments(double mean, double sample_sd, std::int64_t n, double z = 4.0);
};

/// Mean/variance accumulator (Welford); single pass, numerically stable.
class OnlineStats {
public:
    void add(double x) noexcept {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    std::int64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double sample_sd() const noexcept;
    McEstimate estimate(double z = 4.0) const;

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Mean and stderr of a sequence already materialized in memory, summed in
/// index order so the result does not depend on thread count.
McEstimate mc_from_samples(const std::vector<double>& samples, double z = 4.0);

/// Draws n samples serially from the given stream. n >= 2 required.
McEstimate mc_estimate(const std::function<double(RandomStream&)>& sampler,
                       std::int64_t n, RandomStream stream, double z = 4.0);

/// Sup distance between the empirical CDF of the samples and cdf.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Sup distance between the empirical CDFs of two samples.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

} // namespace stoklab
