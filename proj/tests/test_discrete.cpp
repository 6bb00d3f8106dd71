#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "stoklab/discrete.hpp"
#include "stoklab/errors.hpp"
#include "stoklab/parallel.hpp"

using namespace stoklab;

TEST_CASE("walk with zero steps is the origin") {
    const PathNd p = simulate_random_walk(derive_stream(1, 0), 0, 2);
    CHECK(p.size() == 1);
    CHECK(p.point(0)[0] == 0.0);
    CHECK(p.point(0)[1] == 0.0);
}

TEST_CASE("walk parity and variance growth") {
    const std::size_t n_steps = 10'000;
    const std::int64_t n_paths = 10'000;
    std::vector<double> finals(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path p = simulate_random_walk_1d(derive_stream(42, static_cast<std::uint64_t>(i)),
                                               n_steps);
        finals[static_cast<std::size_t>(i)] = p.values.back();
    });
    const Path one = simulate_random_walk_1d(derive_stream(42, 0), 101);
    for (std::size_t k = 0; k < one.size(); ++k) {
        const long v = std::lround(one.values[k]);
        REQUIRE((v % 2 + 2) % 2 == static_cast<long>(k % 2));
    }
    double sumsq = 0.0;
    for (double v : finals) sumsq += v * v;
    const double var = sumsq / static_cast<double>(n_paths);
    CHECK(var / static_cast<double>(n_steps) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("ehrenfest from the empty urn moves up with probability one") {
    for (int rep = 0; rep < 20; ++rep) {
        const Path p =
            simulate_ehrenfest(derive_stream(3, static_cast<std::uint64_t>(rep)), 3, 1, 0);
        CHECK(p.values[1] == 1.0);
    }
}

TEST_CASE("ehrenfest stays in range with unit increments") {
    const Path p = simulate_ehrenfest(derive_stream(5, 0), 10, 5000, 0);
    for (std::size_t k = 1; k < p.size(); ++k) {
        CHECK(std::fabs(p.values[k] - p.values[k - 1]) == 1.0);
        CHECK(p.values[k] >= 0.0);
        CHECK(p.values[k] <= 10.0);
    }
    CHECK_THROWS_AS((void)simulate_ehrenfest(derive_stream(5, 0), 10, 1, 11),
                    std::invalid_argument);
}

TEST_CASE("ehrenfest chain rows match the draw probabilities") {
    const FiniteChain chain = ehrenfest_chain(4);
    CHECK(chain.prob(2, 1) == doctest::Approx(0.5));
    CHECK(chain.prob(2, 3) == doctest::Approx(0.5));
    CHECK(chain.prob(0, 1) == doctest::Approx(1.0));
    CHECK(chain.prob(4, 3) == doctest::Approx(1.0));
}

TEST_CASE("chain one-step conditional mean matches the matrix") {
    const FiniteChain chain(3, {0.2, 0.5, 0.3,
                                0.1, 0.6, 0.3,
                                0.4, 0.4, 0.2});
    auto f = [](std::size_t j) { return static_cast<double>(j * j) - 1.0; };
    const double exact = chain.conditional_mean(1, f);
    RandomStream s = derive_stream(17, 0);
    const int n = 100'000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = f(chain.step(1, s));
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::fabs(mean - exact) < 4.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("finite chain validation") {
    CHECK_THROWS_AS(FiniteChain(2, {0.5, 0.6, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteChain(2, {1.2, -0.2, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("polya one step takes the two enumerated values") {
    int low = 0, high = 0;
    const int n = 20'000;
    for (int i = 0; i < n; ++i) {
        const Path p = simulate_polya(derive_stream(31, static_cast<std::uint64_t>(i)), 1, 1, 1, 1);
        if (p.values[1] == doctest::Approx(1.0 / 3.0)) ++low;
        else if (p.values[1] == doctest::Approx(2.0 / 3.0)) ++high;
    }
    CHECK(low + high == n);
    CHECK(std::fabs(low / static_cast<double>(n) - 0.5) < 4.0 * 0.5 / std::sqrt(n));
}

TEST_CASE("polya exact law: base cases") {
    const auto at0 = polya_exact_law(3, 2, 1, 0);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].first == doctest::Approx(0.6));
    CHECK(at0[0].second == doctest::Approx(1.0));

    const auto law = polya_exact_law(1, 1, 1, 3);
    REQUIRE(law.size() == 4);
    double mass = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(law[k].first == doctest::Approx((k + 1.0) / 5.0));
        CHECK(law[k].second == doctest::Approx(0.25).epsilon(1e-12));
        mass += law[k].second;
    }
    CHECK(std::fabs(mass - 1.0) < 1e-12);
    CHECK_THROWS_AS((void)polya_exact_law(1, 1, 1, 26), ResourceLimitError);
}

TEST_CASE("polya exact law matches simulation at n = 8") {
    const std::int64_t r0 = 2, v0 = 1, c = 2;
    const std::size_t n = 8;
    const auto law = polya_exact_law(r0, v0, c, n);
    const std::int64_t n_paths = 200'000;
    std::vector<double> finals(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        finals[static_cast<std::size_t>(i)] =
            simulate_polya(derive_stream(77, static_cast<std::uint64_t>(i)), r0, v0, c, n)
                .values.back();
    });
    std::map<long, std::int64_t> hist;
    for (double v : finals) ++hist[std::lround(v * 1e9)];
    for (const auto& [x, p] : law) {
        const auto it = hist.find(std::lround(x * 1e9));
        const double freq =
            it == hist.end() ? 0.0
                             : static_cast<double>(it->second) / static_cast<double>(n_paths);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_paths));
        CHECK(std::fabs(freq - p) < 4.0 * se + 1e-12);
    }
}

TEST_CASE("polya martingale property of the proportion") {
    const std::int64_t n_paths = 100'000;
    std::vector<double> incr(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path p =
            simulate_polya(derive_stream(78, static_cast<std::uint64_t>(i)), 2, 1, 2, 11);
        incr[static_cast<std::size_t>(i)] = p.values[11] - p.values[10];
    });
    double sum = 0.0, sumsq = 0.0;
    for (double v : incr) {
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(n_paths);
    const double sd = std::sqrt(sumsq / static_cast<double>(n_paths) - mean * mean);
    CHECK(std::fabs(mean) < 4.0 * sd / std::sqrt(static_cast<double>(n_paths)));
}

TEST_CASE("polya bracket increment equals the two-branch enumeration") {
    const double c = 2.0;
    for (double x : {0.1, 0.37, 0.5, 0.9}) {
        const double n_after = 13.0;
        const double up = c * (1.0 - x) / n_after;
        const double down = -c * x / n_after;
        const double direct = x * up * up + (1.0 - x) * down * down;
        CHECK(polya_bracket_increment(x, n_after, c) == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("galton-watson absorbing and deterministic cases") {
    const Path dead =
        simulate_galton_watson(derive_stream(9, 0), OffspringDistribution({0.5, 0.5}), 0, 10);
    for (double v : dead.values) CHECK(v == 0.0);

    const Path flat =
        simulate_galton_watson(derive_stream(9, 1), OffspringDistribution({0.0, 1.0}), 7, 10);
    for (double v : flat.values) CHECK(v == 7.0);
}

TEST_CASE("galton-watson normalized population is a martingale") {
    // binomial(3, 1/2) offspring: mean 1.5
    const OffspringDistribution off({0.125, 0.375, 0.375, 0.125});
    const double mu = off.mean();
    CHECK(mu == doctest::Approx(1.5));
    const std::size_t n_gen = 8;
    const std::int64_t n_paths = 40'000;
    std::vector<double> ratio(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path z = simulate_galton_watson(derive_stream(101, static_cast<std::uint64_t>(i)),
                                              off, 1, n_gen);
        ratio[static_cast<std::size_t>(i)] =
            z.values.back() / std::pow(mu, static_cast<double>(n_gen));
    });
    double sum = 0.0, sumsq = 0.0;
    for (double v : ratio) {
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / static_cast<double>(n_paths);
    const double sd = std::sqrt(sumsq / static_cast<double>(n_paths) - mean * mean);
    CHECK(std::fabs(mean - 1.0) < 4.0 * sd / std::sqrt(static_cast<double>(n_paths)));
}

TEST_CASE("galton-watson population cap raises a resource error") {
    const OffspringDistribution off({0.0, 0.0, 0.0, 1.0}); // always three children
    CHECK_THROWS_AS((void)simulate_galton_watson(derive_stream(9, 2), off, 1, 40),
                    ResourceLimitError);
}

TEST_CASE("extinction probability: family-name law") {
    const OffspringDistribution off({0.125, 0.375, 0.375, 0.125});
    const double rho = gw_extinction_probability(off);
    const double expected = std::sqrt(5.0) - 2.0;
    CHECK(std::fabs(rho - expected) < 1e-10);
    CHECK(std::fabs(off.pgf(rho) - rho) < 1e-12);
}

TEST_CASE("extinction probability: critical and subcritical laws are certain") {
    CHECK(gw_extinction_probability(OffspringDistribution({0.0, 1.0})) == 1.0);
    CHECK(gw_extinction_probability(OffspringDistribution({0.5, 0.3, 0.2})) == 1.0);
}

TEST_CASE("extinction probability: binomial(3, 0.4) against fixed-point iteration") {
    const double p = 0.4, q = 0.6;
    const OffspringDistribution off({q * q * q, 3 * p * q * q, 3 * p * p * q, p * p * p});
    // independent oracle: iterate the extinction recursion from 0
    long double theta = 0.0L;
    for (int m = 0; m < 200000; ++m) {
        const long double s = theta;
        const long double base = 0.6L + 0.4L * s;
        theta = base * base * base;
        if (std::fabs(static_cast<double>(theta - s)) < 1e-17) break;
    }
    const double rho = gw_extinction_probability(off);
    CHECK(std::fabs(rho - static_cast<double>(theta)) < 1e-12);
    CHECK(rho < 1.0);
}

TEST_CASE("random sum with zero terms has zero variance") {
    auto est = simulate_random_sum(
        derive_stream(13, 0), [](RandomStream&) { return std::int64_t{0}; },
        [](RandomStream& s) { return s.gaussian(); }, 1000);
    CHECK(est.mean == doctest::Approx(0.0));
}

TEST_CASE("die-then-coins variance is 77/48") {
    auto est = simulate_random_sum(
        derive_stream(14, 0),
        [](RandomStream& s) { return static_cast<std::int64_t>(s.next_word() % 6) + 1; },
        [](RandomStream& s) { return s.uniform() < 0.5 ? 1.0 : 0.0; }, 200'000);
    CHECK(std::fabs(est.mean - 77.0 / 48.0) < 4.0 * est.stderr_);
}

TEST_CASE("compound sum with poisson counts matches m E[xi^2]") {
    // counts poisson(3) by inversion; xi with mean 1, variance 4
    auto poisson3 = [](RandomStream& s) {
        const double u = s.uniform();
        double p = std::exp(-3.0), acc = p;
        std::int64_t k = 0;
        while (u > acc && k < 100) {
            ++k;
            p *= 3.0 / static_cast<double>(k);
            acc += p;
        }
        return k;
    };
    auto xi = [](RandomStream& s) { return 1.0 + 2.0 * s.gaussian(); };
    auto est = simulate_random_sum(derive_stream(15, 0), poisson3, xi, 400'000);
    // sigma^2 E[N] + mu^2 Var(N) = 4*3 + 1*3 = 15
    CHECK(std::fabs(est.mean - 15.0) < 4.0 * est.stderr_);
}
