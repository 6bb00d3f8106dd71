#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "stoklab/path.hpp"
#include "stoklab/rng.hpp"
#include "stoklab/stats.hpp"

namespace stoklab {

/// Finite state space with a row-stochastic transition matrix.
class FiniteChain {
public:
    FiniteChain(std::size_t n_states, std::vector<double> transition_row_major);

    std::size_t n_states() const noexcept { return n_; }
    double prob(std::size_t i, std::size_t j) const { return p_[i * n_ + j]; }

    /// Exact one-step conditional mean of f from state i: sum_j f(j) p_ij.
    double conditional_mean(std::size_t i, const std::function<double(std::size_t)>& f) const;

    std::size_t step(std::size_t i, RandomStream& stream) const;
    Path simulate(std::size_t x0, std::size_t n_steps, RandomStream stream) const;

private:
    std::size_t n_;
    std::vector<double> p_;
};

/// Offspring law p_k, k = 0..k_max; probabilities sum to 1.
class OffspringDistribution {
public:
    explicit OffspringDistribution(std::vector<double> probabilities);

    std::size_t k_max() const noexcept { return p_.size() - 1; }
    double prob(std::size_t k) const { return p_[k]; }
    double mean() const noexcept { return mean_; }

    /// Probability generating function phi(s) = sum p_k s^k.
    double pgf(double s) const;

    /// Inverse-CDF draw; O(log k_max).
    std::size_t sample(RandomStream& stream) const;

private:
    std::vector<double> p_;
    std::vector<double> cdf_;
    double mean_;
};

struct UrnState {
    std::int64_t red = 1;
    std::int64_t green = 1;
    std::int64_t c = 1;

    std::int64_t total() const noexcept { return red + green; }
    double red_fraction() const noexcept {
        return static_cast<double>(red) / static_cast<double>(total());
    }
};

/// Symmetric nearest-neighbour walk on Z^dim from the origin.
PathNd simulate_random_walk(RandomStream stream, std::size_t n_steps, std::size_t dim);

/// One-dimensional convenience wrapper.
Path simulate_random_walk_1d(RandomStream stream, std::size_t n_steps);

/// Two-urn model with N balls: from state i, move one ball left with
/// probability i/N, right otherwise. Values stay in {0..N}.
Path simulate_ehrenfest(RandomStream stream, std::int64_t N, std::size_t n_steps, std::int64_t x0);

FiniteChain ehrenfest_chain(std::int64_t N);

/// Reinforced urn: the drawn colour is returned together with c extra balls
/// of the same colour. Returns the trajectory of the red-ball proportion,
/// starting at r0/(r0+v0).
Path simulate_polya(RandomStream stream, std::int64_t r0, std::int64_t v0, std::int64_t c,
                    std::size_t n_steps);

/// Conditional second moment of one urn step given proportion x before the
/// draw, with N_m balls after it: c^2 x (1-x) / N_m^2.
double polya_bracket_increment(double x_prev, double n_after, double c);

/// Exact law of the proportion after n draws, by dynamic programming over
/// the number of red draws. n <= 25.
std::vector<std::pair<double, double>> polya_exact_law(std::int64_t r0, std::int64_t v0,
                                                       std::int64_t c, std::size_t n);

/// Branching process; absorbing at zero. Populations above 1e7 abort with
/// ResourceLimitError.
Path simulate_galton_watson(RandomStream stream, const OffspringDistribution& offspring,
                            std::int64_t z0, std::size_t n_gen);

/// Extinction probability: 1 when the offspring mean is <= 1, otherwise the
/// unique fixed point of the generating function on [0,1), located by
/// bisection to 1e-12.
double gw_extinction_probability(const OffspringDistribution& offspring);

/// Empirical variance (with its own standard error) of X = xi_1 + ... + xi_N
/// over n_samples realizations, N drawn independently of the xi's.
McEstimate simulate_random_sum(RandomStream stream,
                               const std::function<std::int64_t(RandomStream&)>& n_dist,
                               const std::function<double(RandomStream&)>& xi_dist,
                               std::int64_t n_samples);

} // namespace stoklab
