#include "stoklab/discrete.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "stoklab/errors.hpp"

namespace stoklab {

namespace {
constexpr double kRowSumTol = 1e-12;
constexpr std::int64_t kPopulationCap = 10'000'000;
} // namespace

FiniteChain::FiniteChain(std::size_t n_states, std::vector<double> transition_row_major)
    : n_(n_states), p_(std::move(transition_row_major)) {
    if (n_ == 0 || p_.size() != n_ * n_)
        throw std::invalid_argument("FiniteChain: matrix must be n x n");
    for (std::size_t i = 0; i < n_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = p_[i * n_ + j];
            if (v < 0.0 || v > 1.0)
                throw std::invalid_argument("FiniteChain: entries must lie in [0,1]");
            row += v;
        }
        if (std::fabs(row - 1.0) > kRowSumTol)
            throw std::invalid_argument("FiniteChain: row sums must equal 1");
    }
}

double FiniteChain::conditional_mean(std::size_t i,
                                     const std::function<double(std::size_t)>& f) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += f(j) * p_[i * n_ + j];
    return s;
}

std::size_t FiniteChain::step(std::size_t i, RandomStream& stream) const {
    const double u = stream.uniform();
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
        acc += p_[i * n_ + j];
        if (u < acc) return j;
    }
    return n_ - 1;
}

Path FiniteChain::simulate(std::size_t x0, std::size_t n_steps, RandomStream stream) const {
    if (x0 >= n_) throw std::invalid_argument("FiniteChain::simulate: x0 out of range");
    Path p;
    p.times.resize(n_steps + 1);
    p.values.resize(n_steps + 1);
    std::size_t x = x0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
        p.times[k] = static_cast<double>(k);
        p.values[k] = static_cast<double>(x);
        if (k < n_steps) x = step(x, stream);
    }
    return p;
}

OffspringDistribution::OffspringDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
    if (p_.empty()) throw std::invalid_argument("OffspringDistribution: empty law");
    double sum = 0.0, mean = 0.0;
    cdf_.resize(p_.size());
    for (std::size_t k = 0; k < p_.size(); ++k) {
        if (p_[k] < 0.0) throw std::invalid_argument("OffspringDistribution: negative mass");
        sum += p_[k];
        mean += static_cast<double>(k) * p_[k];
        cdf_[k] = sum;
    }
    if (std::fabs(sum - 1.0) > kRowSumTol)
        throw std::invalid_argument("OffspringDistribution: masses must sum to 1");
    cdf_.back() = 1.0;
    mean_ = mean;
}

double OffspringDistribution::pgf(double s) const {
    // Horner, highest degree first.
    double v = 0.0;
    for (std::size_t k = p_.size(); k-- > 0;) v = v * s + p_[k];
    return v;
}

std::size_t OffspringDistribution::sample(RandomStream& stream) const {
    const double u = stream.uniform();
    return static_cast<std::size_t>(
        std::lower_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
}

PathNd simulate_random_walk(RandomStream stream, std::size_t n_steps, std::size_t dim) {
    if (dim < 1) throw std::invalid_argument("simulate_random_walk: dim must be >= 1");
    PathNd p;
    p.dim = dim;
    p.times.resize(n_steps + 1);
    p.values.assign((n_steps + 1) * dim, 0.0);
    std::vector<double> x(dim, 0.0);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        p.times[k] = static_cast<double>(k);
        std::copy(x.begin(), x.end(), p.values.begin() + k * dim);
        if (k < n_steps) {
            // one of 2*dim unit moves, equiprobable
            const std::uint64_t w = stream.next_word();
            const std::size_t move = static_cast<std::size_t>(w % (2 * dim));
            x[move / 2] += (move % 2 == 0) ? 1.0 : -1.0;
        }
    }
    return p;
}

Path simulate_random_walk_1d(RandomStream stream, std::size_t n_steps) {
    PathNd w = simulate_random_walk(stream, n_steps, 1);
    return Path{std::move(w.times), std::move(w.values)};
}

Path simulate_ehrenfest(RandomStream stream, std::int64_t N, std::size_t n_steps,
                        std::int64_t x0) {
    if (N < 1) throw std::invalid_argument("simulate_ehrenfest: N must be >= 1");
    if (x0 < 0 || x0 > N)
        throw std::invalid_argument("simulate_ehrenfest: x0 must lie in {0..N}");
    Path p;
    p.times.resize(n_steps + 1);
    p.values.resize(n_steps + 1);
    std::int64_t x = x0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
        p.times[k] = static_cast<double>(k);
        p.values[k] = static_cast<double>(x);
        if (k < n_steps) {
            const double u = stream.uniform();
            x += (u < static_cast<double>(x) / static_cast<double>(N)) ? -1 : +1;
            assert(x >= 0 && x <= N);
        }
    }
    return p;
}

FiniteChain ehrenfest_chain(std::int64_t N) {
    const std::size_t n = static_cast<std::size_t>(N) + 1;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i <= static_cast<std::size_t>(N); ++i) {
        const double down = static_cast<double>(i) / static_cast<double>(N);
        if (i > 0) m[i * n + (i - 1)] = down;
        if (i < static_cast<std::size_t>(N)) m[i * n + (i + 1)] = 1.0 - down;
    }
    return FiniteChain(n, std::move(m));
}

Path simulate_polya(RandomStream stream, std::int64_t r0, std::int64_t v0, std::int64_t c,
                    std::size_t n_steps) {
    if (r0 < 1 || v0 < 1 || c < 1)
        throw std::invalid_argument("simulate_polya: r0, v0, c must be >= 1");
    Path p;
    p.times.resize(n_steps + 1);
    p.values.resize(n_steps + 1);
    std::int64_t red = r0, green = v0;
    for (std::size_t k = 0; k <= n_steps; ++k) {
        p.times[k] = static_cast<double>(k);
        p.values[k] = static_cast<double>(red) / static_cast<double>(red + green);
        assert(p.values[k] > 0.0 && p.values[k] < 1.0);
        if (k < n_steps) {
            if (stream.uniform() < p.values[k]) red += c;
            else green += c;
        }
    }
    return p;
}

double polya_bracket_increment(double x_prev, double n_after, double c) {
    return c * c * x_prev * (1.0 - x_prev) / (n_after * n_after);
}

std::vector<std::pair<double, double>> polya_exact_law(std::int64_t r0, std::int64_t v0,
                                                       std::int64_t c, std::size_t n) {
    if (r0 < 1 || v0 < 1 || c < 1)
        throw std::invalid_argument("polya_exact_law: r0, v0, c must be >= 1");
    if (n > 25)
        throw ResourceLimitError("polya_exact_law: n must be <= 25");

    // prob[k] = P[k red draws after m steps]; the red-draw count is a
    // sufficient statistic for the urn composition.
    std::vector<double> prob(n + 1, 0.0);
    prob[0] = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<double> next(n + 1, 0.0);
        const double total = static_cast<double>(r0 + v0) + static_cast<double>(m) * c;
        for (std::size_t k = 0; k <= m; ++k) {
            if (prob[k] == 0.0) continue;
            const double p_red = (static_cast<double>(r0) + static_cast<double>(k) * c) / total;
            next[k + 1] += prob[k] * p_red;
            next[k] += prob[k] * (1.0 - p_red);
        }
        prob.swap(next);
    }
    const double total_n = static_cast<double>(r0 + v0) + static_cast<double>(n) * c;
    std::vector<std::pair<double, double>> law;
    law.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double x = (static_cast<double>(r0) + static_cast<double>(k) * c) / total_n;
        law.emplace_back(x, prob[k]);
    }
    return law;
}

Path simulate_galton_watson(RandomStream stream, const OffspringDistribution& offspring,
                            std::int64_t z0, std::size_t n_gen) {
    if (z0 < 0) throw std::invalid_argument("simulate_galton_watson: z0 must be >= 0");
    Path p;
    p.times.resize(n_gen + 1);
    p.values.resize(n_gen + 1);
    std::int64_t z = z0;
    for (std::size_t g = 0; g <= n_gen; ++g) {
        p.times[g] = static_cast<double>(g);
        p.values[g] = static_cast<double>(z);
        if (g < n_gen && z > 0) {
            std::int64_t next = 0;
            for (std::int64_t i = 0; i < z; ++i) {
                next += static_cast<std::int64_t>(offspring.sample(stream));
                if (next > kPopulationCap)
                    throw ResourceLimitError(
                        "simulate_galton_watson: population exceeded 1e7; reduce n_gen");
            }
            z = next;
            assert(z >= 0);
        }
    }
    return p;
}

double gw_extinction_probability(const OffspringDistribution& offspring) {
    if (offspring.mean() <= 1.0) return 1.0;

    // phi(s) - s changes sign on [0, 1-1e-9]: phi(0) = p_0 >= 0 and
    // phi'(1) = mu > 1 pulls phi below the diagonal just left of 1.
    auto h = [&](double s) { return offspring.pgf(s) - s; };
    double lo = 0.0, hi = 1.0 - 1e-9;
    if (h(lo) <= 0.0) return 0.0; // p_0 = 0: extinct only if it starts extinct
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) > 0.0) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

McEstimate simulate_random_sum(RandomStream stream,
                               const std::function<std::int64_t(RandomStream&)>& n_dist,
                               const std::function<double(RandomStream&)>& xi_dist,
                               std::int64_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("simulate_random_sum: need n_samples >= 2");
    std::vector<double> xs(static_cast<std::size_t>(n_samples));
    for (std::int64_t i = 0; i < n_samples; ++i) {
        const std::int64_t cnt = n_dist(stream);
        double x = 0.0;
        for (std::int64_t k = 0; k < cnt; ++k) x += xi_dist(stream);
        xs[static_cast<std::size_t>(i)] = x;
    }
    // Variance estimate with its own (asymptotic) standard error from the
    // fourth central moment.
    OnlineStats ms;
    for (double x : xs) ms.add(x);
    const double mean = ms.mean();
    const double var = ms.variance();
    double m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m4 += d * d * d * d;
    }
    m4 /= static_cast<double>(n_samples);
    const double var_of_var = std::max(0.0, m4 - var * var);
    McEstimate e;
    e.mean = var;
    e.n = n_samples;
    e.stderr_ = std::sqrt(var_of_var / static_cast<double>(n_samples));
    e.ci_half_width = 4.0 * e.stderr_;
    return e;
}

} // namespace stoklab
