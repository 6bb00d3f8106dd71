#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stoklab/brownian.hpp"
#include "stoklab/ito.hpp"
#include "stoklab/parallel.hpp"
#include "stoklab/stats.hpp"

using namespace stoklab;

TEST_CASE("unit integrand reproduces the driving path") {
    const Path bm = sample_bm_increments(derive_stream(1, 0), uniform_grid(0.0, 1.0, 64));
    const auto e = SimpleIntegrand::constants(uniform_grid(0.0, 1.0, 8),
                                              std::vector<double>(8, 1.0));
    const Path integral = ito_integral_simple(e, bm);
    for (std::size_t i = 0; i < bm.size(); ++i)
        CHECK(integral.values[i] == doctest::Approx(bm.values[i]).epsilon(1e-12));
}

TEST_CASE("constant integrand scales the driving path") {
    const Path bm = sample_bm_increments(derive_stream(1, 1), uniform_grid(0.0, 1.0, 64));
    const auto e = SimpleIntegrand::constants(uniform_grid(0.0, 1.0, 4),
                                              std::vector<double>(4, -2.5));
    const Path integral = ito_integral_simple(e, bm);
    for (std::size_t i = 0; i < bm.size(); ++i)
        CHECK(integral.values[i] == doctest::Approx(-2.5 * bm.values[i]).epsilon(1e-12));
}

TEST_CASE("integral is linear in the integrand") {
    const Path bm = sample_bm_increments(derive_stream(1, 2), uniform_grid(0.0, 1.0, 32));
    const auto part = uniform_grid(0.0, 1.0, 4);
    const auto e1 = SimpleIntegrand::constants(part, {1.0, -1.0, 2.0, 0.5});
    const auto e2 = SimpleIntegrand::constants(part, {0.25, 3.0, -2.0, 1.0});
    const auto esum = SimpleIntegrand::constants(part, {1.25, 2.0, 0.0, 1.5});
    const Path i1 = ito_integral_simple(e1, bm);
    const Path i2 = ito_integral_simple(e2, bm);
    const Path is = ito_integral_simple(esum, bm);
    for (std::size_t i = 0; i < bm.size(); ++i)
        CHECK(is.values[i] == doctest::Approx(i1.values[i] + i2.values[i]).epsilon(1e-12));
}

TEST_CASE("additivity over time on grid points") {
    const Path bm = sample_bm_increments(derive_stream(1, 3), uniform_grid(0.0, 1.0, 32));
    auto f = [](double, PathView view) { return view.back_value(); };
    const Path integral = ito_integral_leftpoint(f, bm);
    // running sum: I(t) - I(u) telescopes the increments between u and t
    const std::size_t iu = 10, it = 25;
    double seg = 0.0;
    for (std::size_t i = iu + 1; i <= it; ++i)
        seg += bm.values[i - 1] * (bm.values[i] - bm.values[i - 1]);
    CHECK(integral.values[it] - integral.values[iu] == doctest::Approx(seg).epsilon(1e-12));
}

TEST_CASE("grid must refine the partition") {
    const Path bm = sample_bm_increments(derive_stream(1, 4), uniform_grid(0.0, 1.0, 10));
    const auto e = SimpleIntegrand::constants({0.0, 0.33, 1.0}, {1.0, 1.0});
    CHECK_THROWS_AS((void)ito_integral_simple(e, bm), std::invalid_argument);
}

TEST_CASE("adapted integrands give zero-mean integrals") {
    const auto grid = uniform_grid(0.0, 1.0, 128);
    const std::int64_t n_paths = 50'000;
    std::vector<double> finals(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(21, static_cast<std::uint64_t>(i)), grid);
        auto sign_of_past = [](double, PathView view) {
            return view.back_value() >= 0.0 ? 1.0 : -1.0;
        };
        finals[static_cast<std::size_t>(i)] =
            ito_integral_leftpoint(sign_of_past, bm).values.back();
    });
    OnlineStats acc;
    for (double v : finals) acc.add(v);
    CHECK(std::fabs(acc.mean()) < 4.0 * acc.estimate().stderr_);
}

TEST_CASE("left-point integral of B dB against the closed form") {
    // RMS error over paths is at most 4 sqrt(T dt / 2)
    const std::size_t steps = 1 << 10;
    const auto grid = uniform_grid(0.0, 1.0, steps);
    const std::int64_t n_paths = 2000;
    std::vector<double> sq(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(22, static_cast<std::uint64_t>(i)), grid);
        auto f = [](double, PathView v) { return v.back_value(); };
        const double lhs = ito_integral_leftpoint(f, bm).values.back();
        const double target = 0.5 * bm.values.back() * bm.values.back() - 0.5;
        sq[static_cast<std::size_t>(i)] = (lhs - target) * (lhs - target);
    });
    double mse = 0.0;
    for (double v : sq) mse += v;
    mse /= static_cast<double>(n_paths);
    const double dt = 1.0 / static_cast<double>(steps);
    CHECK(std::sqrt(mse) <= 4.0 * std::sqrt(dt / 2.0));
    // and the mean-square level itself concentrates near T dt / 2
    CHECK(mse == doctest::Approx(dt / 2.0).epsilon(0.25));
}

TEST_CASE("deterministic ramp integrand has variance one third") {
    const auto grid = uniform_grid(0.0, 1.0, 512);
    const std::int64_t n_paths = 20'000;
    std::vector<double> finals(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(23, static_cast<std::uint64_t>(i)), grid);
        auto ramp = [](double t, PathView) { return t; };
        finals[static_cast<std::size_t>(i)] = ito_integral_leftpoint(ramp, bm).values.back();
    });
    double var = 0.0;
    for (double v : finals) var += v * v;
    var /= static_cast<double>(n_paths);
    CHECK(std::fabs(var - 1.0 / 3.0) < 0.02);
}

TEST_CASE("discounted exponential integrand settles at the OU variance") {
    // Y_t = e^{-t} int_0^t e^s dB_s has variance (1 - e^{-2t})/2
    const double T = 2.0;
    const auto grid = uniform_grid(0.0, T, 1024);
    const std::int64_t n_paths = 20'000;
    std::vector<double> finals(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(24, static_cast<std::uint64_t>(i)), grid);
        auto grow = [](double t, PathView) { return std::exp(t); };
        finals[static_cast<std::size_t>(i)] =
            std::exp(-T) * ito_integral_leftpoint(grow, bm).values.back();
    });
    OnlineStats acc;
    for (double v : finals) acc.add(v * v);
    const double target = 0.5 * (1.0 - std::exp(-2.0 * T));
    // left-point quadrature of e^{2s} under-integrates by about dt/2 * f'(T)/f...
    const double quad_bias = (T / 1024.0) * target;
    CHECK(std::fabs(acc.mean() - target) < 4.0 * acc.estimate().stderr_ + quad_bias);
}

TEST_CASE("midpoint rule on B telescopes exactly") {
    const Path bm = sample_bm_increments(derive_stream(25, 0), uniform_grid(0.0, 1.0, 4096));
    auto f = [](double, PathView v) { return v.back_value(); };
    const Path strat = stratonovich_integral_midpoint(f, bm);
    const double target = 0.5 * bm.values.back() * bm.values.back();
    CHECK(std::fabs(strat.values.back() - target) < 1e-11);
}

TEST_CASE("stratonovich and ito agree for deterministic integrands") {
    const std::size_t steps = 1 << 10;
    const auto grid = uniform_grid(0.0, 1.0, steps);
    const std::int64_t n_paths = 2000;
    std::vector<double> diff(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(26, static_cast<std::uint64_t>(i)), grid);
        auto ramp = [](double t, PathView) { return t; };
        diff[static_cast<std::size_t>(i)] =
            stratonovich_integral_midpoint(ramp, bm).values.back() -
            ito_integral_leftpoint(ramp, bm).values.back();
    });
    double mse = 0.0;
    for (double v : diff) mse += v * v;
    mse /= static_cast<double>(n_paths);
    // difference is (1/2) sum dt dB: variance dt^2 T / 4
    const double dt = 1.0 / static_cast<double>(steps);
    CHECK(std::sqrt(mse) < 4.0 * dt);
}

TEST_CASE("stratonovich minus ito matches the drift correction") {
    // integrand cos(B): difference converges to -(1/2) int sin(B_s) ds
    const std::size_t steps = 1 << 10;
    const auto grid = uniform_grid(0.0, 1.0, steps);
    const std::int64_t n_paths = 2000;
    std::vector<double> resid(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(27, static_cast<std::uint64_t>(i)), grid);
        auto f = [](double, PathView v) { return std::cos(v.back_value()); };
        const double strat = stratonovich_integral_midpoint(f, bm).values.back();
        const double ito = ito_integral_leftpoint(f, bm).values.back();
        double correction = 0.0;
        for (std::size_t k = 1; k < bm.size(); ++k)
            correction += -0.5 * std::sin(bm.values[k - 1]) * (bm.times[k] - bm.times[k - 1]);
        resid[static_cast<std::size_t>(i)] = strat - ito - correction;
    });
    double mse = 0.0;
    for (double v : resid) mse += v * v;
    const double rms = std::sqrt(mse / static_cast<double>(n_paths));
    const double dt = 1.0 / static_cast<double>(steps);
    // residual shrinks like sqrt(dt); constant frozen from measurement with headroom
    CHECK(rms < 1.5 * std::sqrt(dt));
}

TEST_CASE("isometry audit on the dyadic integrand") {
    const int levels = 1 << 8;
    std::vector<double> part = uniform_grid(0.0, 1.0, levels);
    SimpleIntegrand e;
    e.partition = part;
    e.value_on = [](std::size_t, PathView prefix) { return prefix.back_value(); };
    auto m2 = [](double s) { return s; }; // E[B_s^2] piecewise left value
    const auto audit = isometry_audit(e, m2, 50'000, 1, derive_stream(28, 0));
    CHECK(audit.rhs == doctest::Approx((std::pow(2.0, 8) - 1.0) / std::pow(2.0, 9)).epsilon(1e-12));
    CHECK(std::fabs(audit.lhs.mean - audit.rhs) < 4.0 * audit.lhs.stderr_);
}

TEST_CASE("isometry audit trivial cases") {
    const auto part = uniform_grid(0.0, 1.0, 16);
    const auto one = SimpleIntegrand::constants(part, std::vector<double>(16, 1.0));
    const auto audit1 = isometry_audit(one, [](double) { return 1.0; }, 20'000, 4,
                                       derive_stream(29, 0));
    CHECK(audit1.rhs == doctest::Approx(1.0));
    CHECK(std::fabs(audit1.lhs.mean - 1.0) < 4.0 * audit1.lhs.stderr_);

    const auto zero = SimpleIntegrand::constants(part, std::vector<double>(16, 0.0));
    const auto audit0 = isometry_audit(zero, [](double) { return 0.0; }, 100, 1,
                                       derive_stream(29, 1));
    CHECK(audit0.rhs == 0.0);
    CHECK(audit0.lhs.mean == 0.0);
}

TEST_CASE("exponential supermartingale with constant gamma") {
    const double gamma = 0.8;
    const auto grid = uniform_grid(0.0, 1.0, 256);
    const std::int64_t n_paths = 50'000;
    std::vector<double> m1(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(30, static_cast<std::uint64_t>(i)), grid);
        auto g = [gamma](double, PathView) { return gamma; };
        const Path m = exponential_supermartingale(g, bm);
        // pathwise agreement with exp(gamma B - gamma^2 t / 2)
        const double direct =
            std::exp(gamma * bm.values.back() - 0.5 * gamma * gamma * bm.times.back());
        if (std::fabs(m.values.back() - direct) > 1e-10) m1[static_cast<std::size_t>(i)] = 1e9;
        else m1[static_cast<std::size_t>(i)] = m.values.back();
    });
    OnlineStats acc;
    for (double v : m1) acc.add(v);
    CHECK(std::fabs(acc.mean() - 1.0) < 4.0 * acc.estimate().stderr_);
}

TEST_CASE("zero integrand gives the constant supermartingale") {
    const Path bm = sample_bm_increments(derive_stream(31, 0), uniform_grid(0.0, 1.0, 32));
    const Path m = exponential_supermartingale([](double, PathView) { return 0.0; }, bm);
    for (double v : m.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("bernstein bound for a deterministic integrand") {
    // phi(s) = 1 + s/2, Phi(t) = t + t^2/4 + t^3/12
    const double T = 1.0;
    const double Phi = T + T * T / 4.0 + T * T * T / 12.0;
    const double lambda = 2.5;
    const auto grid = uniform_grid(0.0, T, 512);
    const std::int64_t n_paths = 50'000;
    std::vector<double> exceeds(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm =
            sample_bm_increments(derive_stream(32, static_cast<std::uint64_t>(i)), grid);
        auto phi = [](double s, PathView) { return 1.0 + 0.5 * s; };
        const Path integral = ito_integral_leftpoint(phi, bm);
        double running_max = 0.0;
        for (double v : integral.values) running_max = std::max(running_max, v);
        exceeds[static_cast<std::size_t>(i)] = running_max > lambda ? 1.0 : 0.0;
    });
    OnlineStats acc;
    for (double v : exceeds) acc.add(v);
    const double bound = std::exp(-lambda * lambda / (2.0 * Phi));
    CHECK(acc.mean() <= bound + 4.0 * acc.estimate().stderr_);
    CHECK(acc.mean() > 0.001); // exercised, not vacuous
}
