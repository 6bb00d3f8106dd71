#include "stoklab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stoklab {

McEstimate McEstimate::from_moments(double mean, double sample_sd, std::int64_t n, double z) {
    McEstimate e;
    e.mean = mean;
    e.n = n;
    e.stderr_ = n > 0 ? sample_sd / std::sqrt(static_cast<double>(n)) : 0.0;
    e.ci_half_width = z * e.stderr_;
    return e;
}

double OnlineStats::sample_sd() const noexcept {
    return std::sqrt(variance());
}

McEstimate OnlineStats::estimate(double z) const {
    return McEstimate::from_moments(mean_, sample_sd(), n_, z);
}

McEstimate mc_from_samples(const std::vector<double>& samples, double z) {
    OnlineStats acc;
    for (double x : samples) acc.add(x);
    return acc.estimate(z);
}

McEstimate mc_estimate(const std::function<double(RandomStream&)>& sampler,
                       std::int64_t n, RandomStream stream, double z) {
    if (n < 2) throw std::invalid_argument("mc_estimate: n must be at least 2");
    OnlineStats acc;
    for (std::int64_t i = 0; i < n; ++i) acc.add(sampler(stream));
    return acc.estimate(z);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

} // namespace stoklab
