#include "stoklab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "stoklab/brownian.hpp"
#include "stoklab/diffusion.hpp"
#include "stoklab/discrete.hpp"
#include "stoklab/ito.hpp"
#include "stoklab/martingale.hpp"
#include "stoklab/parallel.hpp"
#include "stoklab/sde.hpp"

namespace stoklab {

namespace {

const double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct RowResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    double oracle = 0.0;
    std::string source;
    double tolerance = 0.0;
};

/// Per-experiment context: merged parameters, a seed namespaced by the
/// experiment name, and timed row insertion. Every tolerance is scaled by
/// the tol_scale override (a sensitivity knob, default 1).
struct Ctx {
    std::string name;
    std::uint64_t seed;
    ParamMap params;
    Report* report;

    double param(const std::string& key) const {
        const auto it = params.find(key);
        if (it == params.end())
            throw std::logic_error("experiment '" + name + "' lacks parameter " + key);
        return it->second;
    }
    std::int64_t iparam(const std::string& key) const {
        return static_cast<std::int64_t>(param(key));
    }
    RandomStream family(std::uint64_t block) const {
        return derive_stream(seed ^ fnv64(name), block << 24);
    }

    void row(const std::string& check_id, const std::function<RowResult()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        ReportRow r;
        r.check_id = check_id;
        try {
            RowResult rr = fn();
            r.estimate = rr.estimate;
            r.stderr_ = rr.stderr_;
            r.oracle = rr.oracle;
            r.oracle_source = rr.source;
            r.tolerance = rr.tolerance * param("tol_scale");
            r.pass = std::fabs(r.estimate - r.oracle) <= r.tolerance;
        } catch (const std::exception& e) {
            r.estimate = std::nan("");
            r.oracle_source = std::string("error: ") + e.what();
            r.pass = false;
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report->rows.push_back(std::move(r));
    }
};

DiffusionSpec brownian_spec() {
    return DiffusionSpec{[](double, double) { return 0.0; },
                         [](double, double) { return 1.0; },
                         [](double, double) { return 0.0; },
                         [](double, double) { return 0.0; }};
}

double arcsine_cdf(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 2.0 / kPi * std::asin(std::sqrt(u));
}

// ---------------------------------------------------------------- polya

void run_polya_limit(Ctx& ctx) {
    ctx.row("exact-uniform-n3", [&] {
        const auto law = polya_exact_law(1, 1, 1, 3);
        double dev = 0.0;
        for (const auto& [x, p] : law) dev = std::max(dev, std::fabs(p - 0.25));
        return RowResult{dev, 0.0, 0.0, "dp law of the urn proportion at n=3 is uniform", 1e-12};
    });

    ctx.row("mc-vs-dp-histogram", [&] {
        const std::int64_t n_paths = ctx.iparam("mc_paths");
        const std::size_t n = 8;
        const auto law = polya_exact_law(2, 1, 2, n);
        std::vector<double> finals(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(1);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            finals[static_cast<std::size_t>(i)] =
                simulate_polya(fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), 2, 1, 2,
                               n)
                    .values.back();
        });
        double max_z = 0.0, max_se = 0.0;
        for (const auto& [x, p] : law) {
            std::int64_t count = 0;
            for (double v : finals)
                if (std::fabs(v - x) < 1e-9) ++count;
            const double freq = static_cast<double>(count) / static_cast<double>(n_paths);
            const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_paths));
            if (se > 0.0) max_z = std::max(max_z, std::fabs(freq - p) / se);
            max_se = std::max(max_se, se);
        }
        return RowResult{max_z, max_se, 0.0, "dp law as the histogram oracle at n=8", 4.0};
    });

    ctx.row("martingale-increment", [&] {
        const std::int64_t n_paths = ctx.iparam("mc_paths") / 10;
        std::vector<double> incr(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(2);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const Path p = simulate_polya(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), 2, 1, 2, 11);
            incr[static_cast<std::size_t>(i)] = p.values[11] - p.values[10];
        });
        const McEstimate e = mc_from_samples(incr);
        return RowResult{e.mean, e.stderr_, 0.0,
                         "conditional mean of the proportion equals the current proportion",
                         e.ci_half_width};
    });

    ctx.row("path-convergence", [&] {
        const std::int64_t n_paths = 200;
        const std::size_t len = 10'000;
        std::vector<double> osc(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(3);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const Path x = simulate_polya(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), 2, 1, 2, len);
            double lo = 1e300, hi = -1e300;
            for (std::size_t k = x.size() - 11; k < x.size(); ++k) {
                lo = std::min(lo, x.values[k]);
                hi = std::max(hi, x.values[k]);
            }
            osc[static_cast<std::size_t>(i)] = hi - lo;
        });
        std::int64_t settled = 0;
        for (double v : osc)
            if (v <= 1e-3) ++settled;
        const double frac = static_cast<double>(settled) / static_cast<double>(n_paths);
        return RowResult{frac, std::sqrt(frac * (1.0 - frac) / static_cast<double>(n_paths)),
                         1.0, "tail oscillation of the convergent proportion", 0.05};
    });

    ctx.row("beta-limit-ks", [&] {
        const std::int64_t n_paths = 2000;
        const std::size_t len = 2000;
        std::vector<double> finals(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(4);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            finals[static_cast<std::size_t>(i)] =
                simulate_polya(fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), 1, 1, 1,
                               len)
                    .values.back();
        });
        const double d = ks_statistic(finals, [](double u) {
            return std::clamp(u, 0.0, 1.0); // beta(1,1) is uniform
        });
        const double crit = 1.63 / std::sqrt(static_cast<double>(n_paths)) + 1e-3;
        return RowResult{d, 0.0, 0.0, "beta(1,1) limit of the proportion for unit parameters",
                         crit};
    });
}

// ------------------------------------------------------------ extinction

void run_gw_extinction(Ctx& ctx) {
    const OffspringDistribution family_law({0.125, 0.375, 0.375, 0.125});
    const double rho = gw_extinction_probability(family_law);

    ctx.row("fixed-point-rho", [&] {
        return RowResult{rho, 0.0, std::sqrt(5.0) - 2.0,
                         "unique fixed point of the offspring pgf below one", 1e-10};
    });

    ctx.row("mc-extinction-frequency", [&] {
        const std::int64_t n_trees = ctx.iparam("n_trees");
        std::vector<double> extinct(static_cast<std::size_t>(n_trees));
        const RandomStream fam = ctx.family(1);
        par::parallel_for(n_trees, [&](std::int64_t i) {
            RandomStream s = fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i));
            std::int64_t z = 1;
            // above 50 individuals the residual extinction chance is rho^50
            for (int gen = 0; gen < 1000 && z > 0 && z < 50; ++gen) {
                std::int64_t next = 0;
                for (std::int64_t k = 0; k < z; ++k)
                    next += static_cast<std::int64_t>(family_law.sample(s));
                z = next;
            }
            extinct[static_cast<std::size_t>(i)] = (z == 0) ? 1.0 : 0.0;
        });
        const McEstimate e = mc_from_samples(extinct);
        return RowResult{e.mean, e.stderr_, rho, "extinction frequency over simulated trees",
                         e.ci_half_width + 1e-9};
    });

    ctx.row("binomial-0.4-root", [&] {
        const double p = 0.4, q = 0.6;
        const OffspringDistribution off(
            {q * q * q, 3 * p * q * q, 3 * p * p * q, p * p * p});
        long double theta = 0.0L;
        for (int m = 0; m < 200000; ++m) {
            const long double s = theta;
            const long double base = 0.6L + 0.4L * s;
            theta = base * base * base;
            if (std::fabs(static_cast<double>(theta - s)) < 1e-17) break;
        }
        return RowResult{gw_extinction_probability(off), 0.0, static_cast<double>(theta),
                         "fixed-point iteration of the pgf from zero", 1e-12};
    });

    ctx.row("critical-case", [&] {
        return RowResult{gw_extinction_probability(OffspringDistribution({0.0, 1.0})), 0.0, 1.0,
                         "unit offspring mean forces certain extinction", 0.0};
    });
}

// -------------------------------------------------------------- ehrenfest

void run_ehrenfest(Ctx& ctx) {
    ctx.row("first-step-from-empty", [&] {
        const Path p = simulate_ehrenfest(ctx.family(1), 3, 1, 0);
        return RowResult{p.values[1], 0.0, 1.0, "transition row of the empty urn", 0.0};
    });

    ctx.row("occupation-binomial-z", [&] {
        const std::int64_t N = 20;
        const std::size_t burn = 4096;
        const std::size_t steps = static_cast<std::size_t>(ctx.iparam("occupation_steps"));
        const Path path = simulate_ehrenfest(ctx.family(2), N, burn + steps, 0);
        // batch means absorb the chain's autocorrelation
        const std::size_t n_batches = 100;
        const std::size_t batch = steps / n_batches;
        double max_z = 0.0, max_se = 0.0;
        for (std::int64_t k = 4; k <= 16; ++k) {
            std::vector<double> freq(n_batches, 0.0);
            for (std::size_t b = 0; b < n_batches; ++b) {
                std::size_t hits = 0;
                for (std::size_t j = 0; j < batch; ++j)
                    if (path.values[burn + b * batch + j] == static_cast<double>(k)) ++hits;
                freq[b] = static_cast<double>(hits) / static_cast<double>(batch);
            }
            const McEstimate e = mc_from_samples(freq);
            double mass = 1.0;
            for (std::int64_t j = 0; j < k; ++j)
                mass *= static_cast<double>(N - j) / static_cast<double>(j + 1);
            mass /= std::pow(2.0, static_cast<double>(N));
            if (e.stderr_ > 0.0)
                max_z = std::max(max_z, std::fabs(e.mean - mass) / e.stderr_);
            max_se = std::max(max_se, e.stderr_);
        }
        return RowResult{max_z, max_se, 0.0,
                         "binomial(N, 1/2) stationary occupation of the central states", 4.0};
    });

    ctx.row("proportion-settles", [&] {
        const std::int64_t N = 100;
        const std::size_t steps = 100'000;
        const Path path = simulate_ehrenfest(ctx.family(3), N, steps, 0);
        double acc = 0.0;
        for (std::size_t k = 10'000; k <= steps; ++k) acc += path.values[k];
        const double mean =
            acc / (static_cast<double>(steps - 10'000 + 1) * static_cast<double>(N));
        return RowResult{mean, 0.0, 0.5, "long-run proportion settles at one half", 0.01};
    });

    ctx.row("enters-central-band", [&] {
        double entered = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const Path path = simulate_ehrenfest(
                ctx.family(4).spawn(ctx.family(4).stream_id + static_cast<std::uint64_t>(rep)),
                100, 10'000, 0);
            for (double v : path.values)
                if (v >= 40.0 && v <= 60.0) {
                    entered += 1.0;
                    break;
                }
        }
        return RowResult{entered / 5.0, 0.0, 1.0,
                         "the proportion reaches the central band from an empty urn", 0.0};
    });
}

// ------------------------------------------------------------- doubling

void run_doubling_strategy(Ctx& ctx) {
    auto integer_path = [](const std::vector<double>& v) {
        std::vector<double> t(v.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
        return Path{t, v};
    };

    // stopped wealth of the doubling strategy for one coin sequence
    auto wealth_of = [&](int n, std::uint64_t mask) {
        std::vector<double> xv(static_cast<std::size_t>(n) + 1, 0.0);
        std::vector<double> hv(static_cast<std::size_t>(n) + 1, 0.0);
        bool won = false;
        for (int m = 1; m <= n; ++m) {
            const bool heads = (mask >> (m - 1)) & 1u;
            xv[static_cast<std::size_t>(m)] =
                xv[static_cast<std::size_t>(m - 1)] + (heads ? 1.0 : -1.0);
            hv[static_cast<std::size_t>(m)] = won ? 0.0 : std::pow(2.0, m - 1);
            if (heads) won = true;
        }
        return predictable_transform(integer_path(hv), integer_path(xv)).values.back();
    };

    ctx.row("stopped-law-exact-n20", [&] {
        // enumerate the win-time classes: first head at toss k has mass 2^-k
        const int n = 20;
        double p_win = 0.0, p_ruin = 0.0;
        for (int k = 1; k <= n; ++k) {
            const std::uint64_t mask = std::uint64_t{1} << (k - 1); // tails before, head at k
            const double wealth = wealth_of(n, mask);
            const double mass = std::pow(2.0, -k);
            if (wealth == 1.0) p_win += mass;
            else p_ruin += mass;
        }
        const double ruin_wealth = wealth_of(n, 0);
        if (ruin_wealth == 1.0 - std::pow(2.0, n)) p_ruin += std::pow(2.0, -n);
        const double dev = std::fabs(p_ruin - std::pow(2.0, -n)) +
                           std::fabs(p_win - (1.0 - std::pow(2.0, -n)));
        return RowResult{dev, 0.0, 0.0, "stopped wealth takes 1 and 1 - 2^n with mass 2^-n",
                         0.0};
    });

    ctx.row("full-enumeration-n12", [&] {
        const int n = 12;
        const std::uint64_t total = std::uint64_t{1} << n;
        std::int64_t ruin = 0, win = 0;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            const double wealth = wealth_of(n, mask);
            if (wealth == 1.0) ++win;
            else if (wealth == 1.0 - std::pow(2.0, n)) ++ruin;
        }
        const double dev =
            std::fabs(static_cast<double>(ruin) - 1.0) +
            std::fabs(static_cast<double>(win) - static_cast<double>(total - 1));
        return RowResult{dev, 0.0, 0.0, "all coin sequences of length 12 enumerated", 0.0};
    });

    ctx.row("transform-zero-mean", [&] {
        const std::int64_t n_paths = ctx.iparam("mc_paths");
        const std::size_t len = 100;
        std::vector<double> finals(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(1);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const Path x = simulate_random_walk_1d(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), len);
            Path h = x;
            h.values[0] = 0.0;
            for (std::size_t m = 1; m < x.size(); ++m)
                h.values[m] = x.values[m - 1] < 0.0 ? 1.0 : 0.25;
            finals[static_cast<std::size_t>(i)] = predictable_transform(h, x).values.back();
        });
        const McEstimate e = mc_from_samples(finals);
        return RowResult{e.mean, e.stderr_, 0.0, "transforms of a fair walk keep zero mean",
                         e.ci_half_width};
    });
}

// ------------------------------------------------------------ doob audit

void run_doob_audit(Ctx& ctx) {
    const std::int64_t n_paths = ctx.iparam("n_paths");
    const std::size_t len = static_cast<std::size_t>(ctx.iparam("len"));
    const double lambda = 50.0;

    std::vector<Path> abs_paths(static_cast<std::size_t>(n_paths));
    std::vector<Path> sq_paths(static_cast<std::size_t>(n_paths));
    const RandomStream fam = ctx.family(1);
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path x = simulate_random_walk_1d(
            fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), len);
        Path ax = x, sx = x;
        for (std::size_t k = 0; k < x.size(); ++k) {
            ax.values[k] = std::fabs(x.values[k]);
            sx.values[k] = x.values[k] * x.values[k];
        }
        abs_paths[static_cast<std::size_t>(i)] = std::move(ax);
        sq_paths[static_cast<std::size_t>(i)] = std::move(sx);
    });

    auto violation_row = [&](const MaximalAudit& audit, const char* source) {
        const double slack = 4.0 * (audit.lhs.stderr_ + audit.rhs.stderr_);
        return RowResult{std::max(audit.lhs.mean - audit.rhs.mean, 0.0),
                         audit.lhs.stderr_ + audit.rhs.stderr_, 0.0, source, slack};
    };

    ctx.row("doob-inequality", [&] {
        return violation_row(maximal_inequality_audit(abs_paths, lambda),
                             "running-max tail bounded by the terminal positive part");
    });
    ctx.row("kolmogorov-inequality", [&] {
        return violation_row(maximal_inequality_audit(sq_paths, lambda * lambda),
                             "variance bound on the running maximum of the walk");
    });
    ctx.row("l2-maximal-inequality", [&] {
        return violation_row(maximal_inequality_audit(abs_paths, lambda, 2.0),
                             "second-moment maximal bound with factor four");
    });
}

// ------------------------------------------------------------ bm maximum

void run_bm_maximum(Ctx& ctx) {
    const double oracle = max_law_cdf(1.0, 1.0);

    auto estimate_max_prob = [&](double level, double horizon, std::uint64_t block) {
        const std::int64_t n_paths = ctx.iparam("n_paths");
        const std::size_t steps = static_cast<std::size_t>(horizon / ctx.param("dt"));
        std::vector<double> hit(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(block);
        const double sqdt = std::sqrt(ctx.param("dt"));
        par::parallel_for(n_paths, [&](std::int64_t i) {
            RandomStream s = fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i));
            double b = 0.0;
            double reached = 0.0;
            for (std::size_t k = 0; k < steps; ++k) {
                b += sqdt * s.gaussian();
                if (b >= level) {
                    reached = 1.0;
                    break;
                }
            }
            hit[static_cast<std::size_t>(i)] = reached;
        });
        return mc_from_samples(hit);
    };

    ctx.row("max-law-mc", [&] {
        const McEstimate e = estimate_max_prob(1.0, 1.0, 1);
        return RowResult{e.mean, e.stderr_, oracle,
                         "reflection-principle law of the running maximum", 0.01};
    });

    ctx.row("max-law-scaled", [&] {
        // doubled space and quadrupled time keep the law; dt scales along
        const double dt = ctx.param("dt");
        const std::int64_t n_paths = ctx.iparam("n_paths");
        const std::size_t steps = static_cast<std::size_t>(1.0 / dt);
        std::vector<double> hit(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(2);
        const double sqdt = std::sqrt(4.0 * dt);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            RandomStream s = fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i));
            double b = 0.0;
            double reached = 0.0;
            for (std::size_t k = 0; k < steps; ++k) {
                b += sqdt * s.gaussian();
                if (b >= 2.0) {
                    reached = 1.0;
                    break;
                }
            }
            hit[static_cast<std::size_t>(i)] = reached;
        });
        const McEstimate e = mc_from_samples(hit);
        return RowResult{e.mean, e.stderr_, oracle, "scale invariance of the maximum law",
                         0.01};
    });
}

// ---------------------------------------------------------- first passage

void run_first_passage(Ctx& ctx) {
    const std::int64_t n = ctx.iparam("n_samples");
    RandomStream s = ctx.family(1);
    std::vector<double> taus(static_cast<std::size_t>(n));
    std::int64_t nonfinite = 0;
    for (auto& v : taus) {
        v = sample_first_passage(s, 1.0);
        if (!std::isfinite(v)) ++nonfinite;
    }

    ctx.row("ks-vs-max-law", [&] {
        const double d = ks_statistic(taus, [](double t) {
            return t <= 0.0 ? 0.0 : 2.0 * (1.0 - normal_cdf(1.0 / std::sqrt(t)));
        });
        return RowResult{d, 0.0, 0.0, "passage-time law derived from the maximum law",
                         1.63 / std::sqrt(static_cast<double>(n))};
    });

    ctx.row("median", [&] {
        std::vector<double> sorted = taus;
        std::sort(sorted.begin(), sorted.end());
        const double q75 = normal_quantile(0.75);
        return RowResult{sorted[static_cast<std::size_t>(n) / 2], 0.0, 1.0 / (q75 * q75),
                         "quantile transform of the passage law", 0.065};
    });

    ctx.row("all-finite", [&] {
        return RowResult{static_cast<double>(nonfinite), 0.0, 0.0,
                         "every level is reached in finite time", 0.0};
    });
}

// ------------------------------------------------------------- cauchy hit

void run_cauchy_hit(Ctx& ctx) {
    const std::int64_t n = ctx.iparam("n_samples");
    RandomStream s = ctx.family(1);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& v : xs) v = sample_line_hit_2d(s);

    ctx.row("ks-vs-cauchy", [&] {
        const double d =
            ks_statistic(xs, [](double x) { return 0.5 + std::atan(x) / kPi; });
        return RowResult{d, 0.0, 0.0, "cauchy law of the planar line hit",
                         1.63 / std::sqrt(static_cast<double>(n))};
    });

    ctx.row("median-symmetry", [&] {
        std::vector<double> sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[static_cast<std::size_t>(n) / 2];
        const double iqr = sorted[static_cast<std::size_t>(3 * n) / 4] -
                           sorted[static_cast<std::size_t>(n) / 4];
        return RowResult{median, iqr / std::sqrt(static_cast<double>(n)), 0.0,
                         "symmetry of the hitting abscissa",
                         4.0 * iqr / std::sqrt(static_cast<double>(n))};
    });
}

// ----------------------------------------------------------------- ito

void run_ito_bdb(Ctx& ctx) {
    const std::size_t steps = static_cast<std::size_t>(ctx.iparam("steps"));
    const std::int64_t n_paths = ctx.iparam("n_paths");
    const double dt = 1.0 / static_cast<double>(steps);
    const auto grid = uniform_grid(0.0, 1.0, steps);

    std::vector<double> left_sq(static_cast<std::size_t>(n_paths));
    std::vector<double> mid_sq(static_cast<std::size_t>(n_paths));
    const RandomStream fam = ctx.family(1);
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm = sample_bm_increments(
            fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), grid);
        auto f = [](double, PathView v) { return v.back_value(); };
        const double b2 = bm.values.back() * bm.values.back();
        const double dl = ito_integral_leftpoint(f, bm).values.back() - (0.5 * b2 - 0.5);
        const double dm = stratonovich_integral_midpoint(f, bm).values.back() - 0.5 * b2;
        left_sq[static_cast<std::size_t>(i)] = dl * dl;
        mid_sq[static_cast<std::size_t>(i)] = dm * dm;
    });

    ctx.row("leftpoint-mean-square", [&] {
        const McEstimate e = mc_from_samples(left_sq);
        return RowResult{e.mean, e.stderr_, dt / 2.0,
                         "variance of the quadratic-variation defect", 3.0 * dt / 2.0};
    });
    ctx.row("midpoint-mean-square", [&] {
        const McEstimate e = mc_from_samples(mid_sq);
        return RowResult{e.mean, e.stderr_, 0.0, "telescoping midpoint sum", 2.0 * dt};
    });
}

void run_ito_isometry(Ctx& ctx) {
    ctx.row("dyadic-second-moment", [&] {
        const int cells = 256;
        SimpleIntegrand e;
        e.partition = uniform_grid(0.0, 1.0, cells);
        e.value_on = [](std::size_t, PathView prefix) { return prefix.back_value(); };
        const auto audit = isometry_audit(e, [](double s) { return s; },
                                          ctx.iparam("n_paths"), 1, ctx.family(1));
        return RowResult{audit.lhs.mean, audit.lhs.stderr_, audit.rhs,
                         "isometry of the dyadic step integrand", audit.lhs.ci_half_width};
    });

    ctx.row("unit-integrand", [&] {
        const auto part = uniform_grid(0.0, 1.0, 16);
        const auto e = SimpleIntegrand::constants(part, std::vector<double>(16, 1.0));
        const auto audit = isometry_audit(e, [](double) { return 1.0; },
                                          ctx.iparam("n_paths") / 2, 4, ctx.family(2));
        return RowResult{audit.lhs.mean, audit.lhs.stderr_, audit.rhs,
                         "unit integrand isometry", audit.lhs.ci_half_width};
    });
}

void run_stratonovich(Ctx& ctx) {
    ctx.row("midpoint-bdb-exact", [&] {
        const auto grid = uniform_grid(0.0, 1.0, 4096);
        double worst = 0.0;
        const RandomStream fam = ctx.family(1);
        for (int p = 0; p < 200; ++p) {
            const Path bm = sample_bm_increments(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(p)), grid);
            auto f = [](double, PathView v) { return v.back_value(); };
            const double got = stratonovich_integral_midpoint(f, bm).values.back();
            worst = std::max(
                worst, std::fabs(got - 0.5 * bm.values.back() * bm.values.back()));
        }
        return RowResult{worst, 0.0, 0.0, "telescoping midpoint sum of the path itself", 1e-10};
    });

    ctx.row("ito-correction", [&] {
        const std::size_t steps = 1024;
        const double dt = 1.0 / static_cast<double>(steps);
        const auto grid = uniform_grid(0.0, 1.0, steps);
        const std::int64_t n_paths = ctx.iparam("n_paths");
        std::vector<double> sq(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(2);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const Path bm = sample_bm_increments(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), grid);
            auto f = [](double, PathView v) { return std::cos(v.back_value()); };
            const double strat = stratonovich_integral_midpoint(f, bm).values.back();
            const double ito = ito_integral_leftpoint(f, bm).values.back();
            double correction = 0.0;
            for (std::size_t k = 1; k < bm.size(); ++k)
                correction += -0.5 * std::sin(bm.values[k - 1]) * (bm.times[k] - bm.times[k - 1]);
            const double r = strat - ito - correction;
            sq[static_cast<std::size_t>(i)] = r * r;
        });
        double mse = 0.0;
        for (double v : sq) mse += v;
        const double rms = std::sqrt(mse / static_cast<double>(n_paths));
        return RowResult{rms, 0.0, 0.0,
                         "midpoint minus left-point equals half the derivative drift",
                         1.5 * std::sqrt(dt)};
    });

    ctx.row("deterministic-agreement", [&] {
        const std::size_t steps = 1024;
        const double dt = 1.0 / static_cast<double>(steps);
        const auto grid = uniform_grid(0.0, 1.0, steps);
        const std::int64_t n_paths = ctx.iparam("n_paths");
        std::vector<double> sq(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(3);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const Path bm = sample_bm_increments(
                fam.spawn(fam.stream_id + static_cast<std::uint64_t>(i)), grid);
            auto ramp = [](double t, PathView) { return t; };
            const double d = stratonovich_integral_midpoint(ramp, bm).values.back() -
                             ito_integral_leftpoint(ramp, bm).values.back();
            sq[static_cast<std::size_t>(i)] = d * d;
        });
        double mse = 0.0;
        for (double v : sq) mse += v;
        return RowResult{std::sqrt(mse / static_cast<double>(n_paths)), 0.0, 0.0,
                         "no correction for deterministic integrands", 4.0 * dt};
    });
}

// --------------------------------------------------------------- euler

void run_euler_order(Ctx& ctx) {
    ctx.row("gbm-strong-slope", [&] {
        const Gbm model{0.5, 1.0};
        const auto rows = strong_error_table(spec_of(model), model, 1.0, 1.0,
                                             {64, 128, 256, 512, 1024, 2048, 4096},
                                             ctx.iparam("n_paths"), ctx.family(1));
        return RowResult{log_log_slope(rows), 0.0, 0.5,
                         "strong order half on multiplicative noise", 0.15};
    });

    ctx.row("additive-order-observation", [&] {
        const OrnsteinUhlenbeck model{1.0, 1.0};
        auto rows = strong_error_table(spec_of(model), model, 0.3, 1.0,
                                       {32, 64, 128, 256, 4096}, ctx.iparam("n_paths"),
                                       ctx.family(2));
        rows.pop_back(); // last level is the shared-noise reference
        return RowResult{log_log_slope(rows), 0.0, 1.0,
                         "observed first-order behavior under additive noise", 0.5};
    });
}

void run_picard(Ctx& ctx) {
    const Gbm model{0.5, 1.0};
    const DiffusionSpec spec = spec_of(model);
    const auto grid = uniform_grid(0.0, 1.0, 256);
    const std::int64_t n_paths = ctx.iparam("n_paths");

    std::vector<double> mono(static_cast<std::size_t>(n_paths));
    std::vector<double> gap8(static_cast<std::size_t>(n_paths));
    std::vector<double> err8(static_cast<std::size_t>(n_paths));
    std::vector<double> err_euler(static_cast<std::size_t>(n_paths));
    const RandomStream fam = ctx.family(1);
    par::parallel_for(n_paths, [&](std::int64_t p) {
        const Path bm = sample_bm_increments(
            fam.spawn(fam.stream_id + static_cast<std::uint64_t>(p)), grid);
        const auto iters = picard_iterate(spec, 1.0, bm, 8);
        const Path euler = euler_maruyama(spec, 1.0, bm);
        const Path exact = exact_solution(model, bm, 1.0);
        double prev = 1e300;
        bool monotone = true;
        for (int k = 1; k <= 5; ++k) {
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                sup = std::max(sup,
                               std::fabs(iters[static_cast<std::size_t>(k) + 1].values[i] -
                                         iters[static_cast<std::size_t>(k)].values[i]));
            if (sup > prev) monotone = false;
            prev = sup;
        }
        mono[static_cast<std::size_t>(p)] = monotone ? 1.0 : 0.0;
        double gap = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            gap = std::max(gap, std::fabs(iters[8].values[i] - euler.values[i]));
        gap8[static_cast<std::size_t>(p)] = gap;
        err8[static_cast<std::size_t>(p)] =
            std::fabs(iters[8].values.back() - exact.values.back());
        err_euler[static_cast<std::size_t>(p)] =
            std::fabs(euler.values.back() - exact.values.back());
    });

    ctx.row("contraction-fraction", [&] {
        const McEstimate e = mc_from_samples(mono);
        return RowResult{e.mean, e.stderr_, 0.95, "iterate gaps shrink path by path", 0.05};
    });
    ctx.row("fixed-point-gap", [&] {
        const McEstimate e = mc_from_samples(gap8);
        return RowResult{e.mean, e.stderr_, 0.0,
                         "iterate eight sits on the grid fixed point (the euler path)", 0.01};
    });
    ctx.row("iterate-vs-euler-error", [&] {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < err8.size(); ++i) {
            a += err8[i];
            b += err_euler[i];
        }
        return RowResult{a / b, 0.0, 1.0,
                         "converged iterate shares the euler strong error", 0.05};
    });
}

// ------------------------------------------------------------- exits

void run_exit_interval(Ctx& ctx) {
    const double dt = ctx.param("dt");
    const std::int64_t n_paths = ctx.iparam("n_paths");

    const auto wide = mc_exit_statistics(brownian_spec(), 0.0, -1.0, 2.0, dt, n_paths, {},
                                         ctx.family(1));
    const auto sym = mc_exit_statistics(brownian_spec(), 0.0, -1.0, 1.0, dt, n_paths, {0.5},
                                        ctx.family(2));

    ctx.row("mc-hit-prob", [&] {
        return RowResult{wide.p_hit_lower.mean, wide.p_hit_lower.stderr_,
                         closed_form("interval-hit-lower", {{"x", 0}, {"a", -1}, {"b", 2}}),
                         "harmonic exit probability of the interval",
                         wide.p_hit_lower.ci_half_width + wide.bias_p};
    });
    ctx.row("mc-mean-exit", [&] {
        return RowResult{wide.mean_tau.mean, wide.mean_tau.stderr_,
                         closed_form("interval-mean-exit", {{"x", 0}, {"a", -1}, {"b", 2}}),
                         "product form of the mean exit time",
                         wide.mean_tau.ci_half_width + wide.bias_tau};
    });
    ctx.row("mc-laplace-half", [&] {
        return RowResult{sym.laplace[0].mean, sym.laplace[0].stderr_,
                         closed_form("interval-laplace", {{"x", 0}, {"a", 1}, {"lambda", 0.5}}),
                         "hyperbolic-cosine laplace transform of the exit time",
                         sym.laplace[0].ci_half_width + sym.bias_laplace};
    });
    ctx.row("mc-mean-exit-sq", [&] {
        return RowResult{sym.mean_tau_sq.mean, sym.mean_tau_sq.stderr_,
                         closed_form("interval-mean-exit-sq", {{"x", 0}, {"a", 1}}),
                         "fourth-moment identity for the symmetric exit time",
                         sym.mean_tau_sq.ci_half_width + sym.bias_tau_sq};
    });

    ctx.row("bvp-hit-prob", [&] {
        BvpProblem p;
        p.spec = brownian_spec();
        p.a = -1.0;
        p.b = 2.0;
        p.ua = 1.0;
        p.ub = 0.0;
        p.n_cells = 2048;
        return RowResult{solve_exit_bvp(p).value_at(0.0), 0.0, 2.0 / 3.0,
                         "tridiagonal solve of the harmonic problem", 1e-4};
    });
    ctx.row("bvp-mean-exit", [&] {
        BvpProblem p;
        p.spec = brownian_spec();
        p.a = -1.0;
        p.b = 2.0;
        p.theta = [](double) { return -1.0; };
        p.n_cells = 2048;
        return RowResult{solve_exit_bvp(p).value_at(0.0), 0.0, 2.0,
                         "tridiagonal solve of the mean-exit problem", 1e-3};
    });
    ctx.row("bvp-laplace", [&] {
        BvpProblem p;
        p.spec = brownian_spec();
        p.a = -1.0;
        p.b = 1.0;
        p.ua = 1.0;
        p.ub = 1.0;
        p.killing = [](double) { return 0.5; };
        p.n_cells = 2048;
        return RowResult{solve_exit_bvp(p).value_at(0.0), 0.0, 1.0 / std::cosh(1.0),
                         "killed-problem solve for the laplace transform", 1e-4};
    });
    ctx.row("bvp-mean-exit-sq", [&] {
        BvpProblem p;
        p.spec = brownian_spec();
        p.a = -1.0;
        p.b = 1.0;
        p.theta = [](double x) { return -2.0 * (1.0 - x * x); };
        p.n_cells = 2048;
        return RowResult{solve_exit_bvp(p).value_at(0.0), 0.0, 5.0 / 3.0,
                         "second-moment problem sourced by the mean exit time", 1e-3};
    });
}

void run_feynman_kac(Ctx& ctx) {
    const auto sym = mc_exit_statistics(brownian_spec(), 0.0, -1.0, 1.0, ctx.param("dt"),
                                        ctx.iparam("n_paths"), {0.5}, ctx.family(1));

    ctx.row("mc-conditioned-mean", [&] {
        return RowResult{sym.mean_tau_on_hit_upper.mean, sym.mean_tau_on_hit_upper.stderr_,
                         closed_form("interval-mean-exit-hit-upper", {{"x", 0}, {"a", 1}}),
                         "exit time weighted by the winning side",
                         sym.mean_tau_on_hit_upper.ci_half_width + sym.bias_tau};
    });
    ctx.row("mc-laplace-hit-upper", [&] {
        return RowResult{
            sym.laplace_on_hit_upper[0].mean, sym.laplace_on_hit_upper[0].stderr_,
            closed_form("interval-laplace-hit-upper", {{"x", 0}, {"a", 1}, {"lambda", 0.5}}),
            "hyperbolic-sine transform on the winning side",
            sym.laplace_on_hit_upper[0].ci_half_width + sym.bias_laplace};
    });
    ctx.row("bvp-conditioned-mean", [&] {
        BvpProblem p;
        p.spec = brownian_spec();
        p.a = -1.0;
        p.b = 1.0;
        p.theta = [](double x) { return -(x + 1.0) / 2.0; };
        p.n_cells = 2048;
        return RowResult{solve_exit_bvp(p).value_at(0.0), 0.0, 0.5,
                         "conditioned-mean problem sourced by the win probability", 1e-3};
    });
}

void run_ball_exit(Ctx& ctx) {
    ctx.row("center-mean-exit", [&] {
        const auto r = mc_ball_exit(ctx.family(1), 3, 1.0, {0.0, 0.0, 0.0}, ctx.param("dt"),
                                    ctx.iparam("n_paths"));
        return RowResult{r.mean_tau.mean, r.mean_tau.stderr_,
                         closed_form("ball-mean-exit",
                                     {{"dim", 3}, {"radius", 1}, {"norm_x", 0}}),
                         "ball exit time from the center",
                         r.mean_tau.ci_half_width + 0.02};
    });
    ctx.row("annulus-16", [&] {
        const auto r = mc_ball_exit(ctx.family(2), 3, 1.0, {2.0, 0.0, 0.0}, ctx.param("dt"),
                                    ctx.iparam("n_paths") / 2, 16.0);
        return RowResult{r.p_inner_first.mean, r.p_inner_first.stderr_,
                         closed_form("annulus-hit-inner",
                                     {{"dim", 3}, {"radius", 1}, {"outer", 16}, {"norm_x", 2}}),
                         "harmonic-ratio hit probability in the annulus",
                         r.p_inner_first.ci_half_width + 0.015};
    });
}

void run_transience(Ctx& ctx) {
    ctx.row("escape-to-128", [&] {
        const auto r = mc_ball_exit(ctx.family(1), 3, 1.0, {2.0, 0.0, 0.0}, ctx.param("dt"),
                                    ctx.iparam("n_paths"), 128.0);
        return RowResult{r.p_inner_first.mean, r.p_inner_first.stderr_,
                         closed_form("annulus-hit-inner", {{"dim", 3},
                                                           {"radius", 1},
                                                           {"outer", 128},
                                                           {"norm_x", 2}}),
                         "annulus probability at a huge outer radius",
                         r.p_inner_first.ci_half_width + r.bias_p};
    });
    ctx.row("transient-limit", [&] {
        const double truncated = closed_form(
            "annulus-hit-inner", {{"dim", 3}, {"radius", 1}, {"outer", 128}, {"norm_x", 2}});
        const double limit =
            closed_form("transience-hit-prob", {{"dim", 3}, {"radius", 1}, {"norm_x", 2}});
        return RowResult{truncated, 0.0, limit,
                         "finite outer radius against the transient limit", 5e-3};
    });
}

// --------------------------------------------------------- fokker-planck

DensityGrid gaussian_density(double var, double lo, double hi, std::size_t n) {
    DensityGrid g;
    g.x = uniform_grid(lo, hi, n);
    g.rho.resize(g.x.size());
    for (std::size_t i = 0; i < g.x.size(); ++i)
        g.rho[i] = std::exp(-g.x[i] * g.x[i] / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
    return g;
}

void run_fokker_planck(Ctx& ctx) {
    const std::size_t N = static_cast<std::size_t>(ctx.iparam("n_cells"));
    const double dt = ctx.param("dt");
    const auto rho0 = gaussian_density(0.01, -8.0, 8.0, N);

    const auto evolved = evolve_density(brownian_spec(), rho0, dt, 1.0);

    ctx.row("heat-kernel-l2", [&] {
        const auto target = gaussian_density(1.01, -8.0, 8.0, N);
        double acc = 0.0;
        for (std::size_t i = 1; i < target.x.size(); ++i) {
            const double d0 = evolved.density.rho[i - 1] - target.rho[i - 1];
            const double d1 = evolved.density.rho[i] - target.rho[i];
            acc += 0.5 * (d0 * d0 + d1 * d1) * (target.x[i] - target.x[i - 1]);
        }
        return RowResult{std::sqrt(acc), 0.0, 0.0,
                         "implicit-euler heat flow against the widened gaussian", 1e-3};
    });
    ctx.row("mass-drift", [&] {
        return RowResult{evolved.mass_drift, 0.0, 0.0, "trapezoid mass is conserved", 1e-3};
    });
    ctx.row("semigroup-compose", [&] {
        const auto once = evolve_density(brownian_spec(), rho0, dt, 0.5);
        const auto twice = evolve_density(brownian_spec(), once.density, dt, 0.5);
        const auto direct = evolve_density(brownian_spec(), rho0, dt, 1.0);
        double sup = 0.0;
        for (std::size_t i = 0; i < rho0.x.size(); ++i)
            sup = std::max(sup, std::fabs(twice.density.rho[i] - direct.density.rho[i]));
        return RowResult{sup, 0.0, 0.0, "stepping T twice equals stepping 2T", 1e-12};
    });
}

void run_ou_stationary(Ctx& ctx) {
    const DiffusionSpec ou{[](double x, double) { return -x; },
                           [](double, double) { return 1.0; },
                           [](double, double) { return -1.0; },
                           [](double, double) { return 0.0; }};

    ctx.row("stationary-sup-change", [&] {
        const std::size_t N = static_cast<std::size_t>(ctx.iparam("n_cells"));
        DensityGrid rho0;
        rho0.x = uniform_grid(-8.0, 8.0, N);
        rho0.rho.resize(rho0.x.size());
        for (std::size_t i = 0; i < rho0.x.size(); ++i)
            rho0.rho[i] = std::exp(-rho0.x[i] * rho0.x[i]) / std::sqrt(kPi);
        const auto ev = evolve_density(ou, rho0, ctx.param("dt"), 1.0);
        double sup = 0.0;
        for (std::size_t i = 0; i < rho0.x.size(); ++i)
            sup = std::max(sup, std::fabs(ev.density.rho[i] - rho0.rho[i]));
        return RowResult{sup, 0.0, 0.0, "the squared-exponential density is stationary", 1e-3};
    });

    ctx.row("adjoint-residual-analytic", [&] {
        const TestFunction psi{
            [](double x) { return std::exp(-x * x) / std::sqrt(kPi); },
            [](double x) { return -2.0 * x * std::exp(-x * x) / std::sqrt(kPi); },
            [](double x) { return (4.0 * x * x - 2.0) * std::exp(-x * x) / std::sqrt(kPi); }};
        double sup = 0.0;
        for (int i = 0; i <= 600; ++i) {
            const double x = -3.0 + 6.0 * i / 600.0;
            sup = std::max(sup, std::fabs(apply_adjoint(ou, psi, x)));
        }
        return RowResult{sup, 0.0, 0.0, "adjoint annihilates the stationary density", 1e-6};
    });

    ctx.row("sde-variance", [&] {
        const double T = 2.0;
        const std::size_t steps = 2000;
        const std::int64_t n_paths = ctx.iparam("n_paths");
        std::vector<double> sq(static_cast<std::size_t>(n_paths));
        const RandomStream fam = ctx.family(1);
        par::parallel_for(n_paths, [&](std::int64_t i) {
            const double v = euler_maruyama(ou, 0.0, uniform_grid(0.0, T, steps),
                                            fam.spawn(fam.stream_id +
                                                      static_cast<std::uint64_t>(i)))
                                 .values.back();
            sq[static_cast<std::size_t>(i)] = v * v;
        });
        const McEstimate e = mc_from_samples(sq);
        const double target = 0.5 * (1.0 - std::exp(-2.0 * T));
        return RowResult{e.mean, e.stderr_, target,
                         "stationary variance of the mean-reverting diffusion",
                         e.ci_half_width + T / static_cast<double>(steps)};
    });
}

// ------------------------------------------------------------ gbm hits

void run_gbm_hitting(Ctx& ctx) {
    const double eps = 1e-4;
    const Gbm slow{0.25, 1.0};
    const auto low = mc_exit_statistics(spec_of(slow), 1.0, eps, 4.0, ctx.param("dt"),
                                        ctx.iparam("n_paths"), {}, ctx.family(1));
    const double p_up = 1.0 - low.p_hit_lower.mean;

    ctx.row("hit-prob-two-barrier", [&] {
        const double target = closed_form("gbm-hit-upper-before",
                                          {{"r", 0.25}, {"x", 1}, {"a", eps}, {"b", 4}});
        return RowResult{p_up, low.p_hit_lower.stderr_, target,
                         "two-barrier power law of the exponential diffusion",
                         low.p_hit_lower.ci_half_width + low.bias_p};
    });
    ctx.row("hit-prob-limit", [&] {
        const double target = closed_form("gbm-hit-upper", {{"r", 0.25}, {"x", 1}, {"b", 4}});
        const double truncation =
            std::fabs(target - closed_form("gbm-hit-upper-before",
                                           {{"r", 0.25}, {"x", 1}, {"a", eps}, {"b", 4}}));
        return RowResult{p_up, low.p_hit_lower.stderr_, target,
                         "vanishing-barrier limit of the hitting probability",
                         low.p_hit_lower.ci_half_width + low.bias_p + truncation};
    });

    ctx.row("mean-hit-time", [&] {
        const Gbm fast{1.0, 1.0};
        const auto r = mc_exit_statistics(spec_of(fast), 1.0, 1e-6, 4.0,
                                          ctx.param("dt_mean"), ctx.iparam("n_paths"), {},
                                          ctx.family(2));
        const double target = closed_form("gbm-mean-hit", {{"r", 1}, {"x", 1}, {"b", 4}});
        return RowResult{r.mean_tau.mean, r.mean_tau.stderr_, target,
                         "logarithmic mean hitting time above the critical drift",
                         r.mean_tau.ci_half_width + r.bias_tau};
    });
}

// -------------------------------------------------------------- arcsine

void run_arcsine(Ctx& ctx) {
    const auto frac =
        arcsine_occupation(ctx.family(1), 1.0, ctx.param("dt"), ctx.iparam("n_paths"));

    ctx.row("ks-arcsine", [&] {
        return RowResult{ks_statistic(frac, arcsine_cdf), 0.0, 0.0,
                         "occupation fraction against the arcsine law", 0.02};
    });
    ctx.row("symmetry", [&] {
        std::int64_t below = 0;
        for (double v : frac)
            if (v < 0.5) ++below;
        const double p = static_cast<double>(below) / static_cast<double>(frac.size());
        const double se = std::sqrt(0.25 / static_cast<double>(frac.size()));
        return RowResult{p, se, 0.5, "symmetry of the occupation fraction",
                         4.0 * se + 5e-3};
    });
    ctx.row("scale-invariance", [&] {
        const std::int64_t n = ctx.iparam("n_paths") / 2;
        const auto f1 = arcsine_occupation(ctx.family(2), 1.0, ctx.param("dt"), n);
        const auto f4 = arcsine_occupation(ctx.family(3), 4.0, 4.0 * ctx.param("dt"), n);
        const double crit =
            1.628 * std::sqrt(2.0 / static_cast<double>(n)) + 2e-3;
        return RowResult{ks_two_sample(f1, f4), 0.0, 0.0,
                         "occupation fraction is scale invariant", crit};
    });
}

// -------------------------------------------------------------- registry

struct Entry {
    ExperimentInfo info;
    void (*runner)(Ctx&);
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> entries = {
        {{"polya-limit",
          "reinforced-urn proportion: exact law, histogram, martingale and limit checks",
          {{"mc_paths", 1e6}, {"tol_scale", 1.0}}},
         run_polya_limit},
        {{"gw-extinction",
          "branching-process extinction probability against the pgf fixed point",
          {{"n_trees", 1e5}, {"tol_scale", 1.0}}},
         run_gw_extinction},
        {{"ehrenfest",
          "two-urn chain: stationary binomial occupation and relaxation to balance",
          {{"occupation_steps", 2e5}, {"tol_scale", 1.0}}},
         run_ehrenfest},
        {{"doubling-strategy",
          "doubling bets on a fair coin: exact stopped-wealth law and zero-mean transforms",
          {{"mc_paths", 1e5}, {"tol_scale", 1.0}}},
         run_doubling_strategy},
        {{"doob-audit",
          "running-maximum inequalities audited on walk ensembles",
          {{"n_paths", 1e5}, {"len", 1e3}, {"tol_scale", 1.0}}},
         run_doob_audit},
        {{"bm-maximum",
          "monte carlo running maximum against the reflection-principle law",
          {{"n_paths", 1e5}, {"dt", 1e-4}, {"tol_scale", 1.0}}},
         run_bm_maximum},
        {{"first-passage",
          "exact level-passage sampler against its distribution law",
          {{"n_samples", 1e5}, {"tol_scale", 1.0}}},
         run_first_passage},
        {{"cauchy-hit",
          "planar line hits follow the cauchy law",
          {{"n_samples", 1e5}, {"tol_scale", 1.0}}},
         run_cauchy_hit},
        {{"ito-bdb",
          "left-point and midpoint sums of B dB against the closed forms",
          {{"n_paths", 1e4}, {"steps", 4096}, {"tol_scale", 1.0}}},
         run_ito_bdb},
        {{"ito-isometry",
          "second moment of the stochastic integral equals the time integral",
          {{"n_paths", 1e5}, {"tol_scale", 1.0}}},
         run_ito_isometry},
        {{"stratonovich",
          "midpoint integral: telescoping value and the drift correction",
          {{"n_paths", 2000}, {"tol_scale", 1.0}}},
         run_stratonovich},
        {{"euler-order",
          "strong convergence order of the euler scheme",
          {{"n_paths", 1000}, {"tol_scale", 1.0}}},
         run_euler_order},
        {{"picard",
          "fixed-point iteration on a frozen path: contraction and the euler limit",
          {{"n_paths", 1000}, {"tol_scale", 1.0}}},
         run_picard},
        {{"exit-interval",
          "interval exit statistics: monte carlo and boundary-value solves",
          {{"n_paths", 1e5}, {"dt", 2.5e-4}, {"tol_scale", 1.0}}},
         run_exit_interval},
        {{"feynman-kac",
          "killed and conditioned exit functionals against hyperbolic closed forms",
          {{"n_paths", 1e5}, {"dt", 2.5e-4}, {"tol_scale", 1.0}}},
         run_feynman_kac},
        {{"ball-exit",
          "isotropic exit times and annulus hitting in three dimensions",
          {{"n_paths", 2e4}, {"dt", 1e-3}, {"tol_scale", 1.0}}},
         run_ball_exit},
        {{"transience",
          "three-dimensional transience via a huge outer radius",
          {{"n_paths", 3000}, {"dt", 1e-2}, {"tol_scale", 1.0}}},
         run_transience},
        {{"fokker-planck",
          "implicit-euler density evolution against the heat kernel",
          {{"n_cells", 2048}, {"dt", 1e-3}, {"tol_scale", 1.0}}},
         run_fokker_planck},
        {{"ou-stationary",
          "mean-reverting diffusion: stationary density, adjoint residual, variance",
          {{"n_cells", 2048}, {"dt", 1e-3}, {"n_paths", 2e4}, {"tol_scale", 1.0}}},
         run_ou_stationary},
        {{"gbm-hitting",
          "exponential diffusion hitting laws and mean passage times",
          {{"n_paths", 2e4}, {"dt", 1e-3}, {"dt_mean", 1e-4}, {"tol_scale", 1.0}}},
         run_gbm_hitting},
        {{"arcsine",
          "occupation-time fraction against the arcsine law",
          {{"n_paths", 2e4}, {"dt", 1e-4}, {"tol_scale", 1.0}}},
         run_arcsine},
    };
    return entries;
}

} // namespace

bool Report::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::string Report::to_csv(bool redact_timing) const {
    std::ostringstream out;
    out << "check_id,estimate,stderr,oracle,oracle_source,tolerance,pass,seconds\n";
    for (const auto& r : rows) {
        std::string source = r.oracle_source;
        std::replace(source.begin(), source.end(), ',', ';');
        out << r.check_id << ',' << fmt17(r.estimate) << ',' << fmt17(r.stderr_) << ','
            << fmt17(r.oracle) << ',' << source << ',' << fmt17(r.tolerance) << ','
            << (r.pass ? "true" : "false") << ',' << fmt17(redact_timing ? 0.0 : r.seconds)
            << '\n';
    }
    return out.str();
}

std::string Report::to_json(bool redact_timing) const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"check_id", r.check_id},
                             {"estimate", r.estimate},
                             {"stderr", r.stderr_},
                             {"oracle", r.oracle},
                             {"oracle_source", r.oracle_source},
                             {"tolerance", r.tolerance},
                             {"pass", r.pass},
                             {"seconds", redact_timing ? 0.0 : r.seconds}});
    }
    return j.dump(2) + "\n";
}

const std::vector<ExperimentInfo>& list_experiments() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

Report run_experiment(const std::string& name, std::uint64_t seed, const ParamMap& overrides) {
    const Entry* found = nullptr;
    for (const auto& e : registry())
        if (e.info.name == name) {
            found = &e;
            break;
        }
    if (!found) throw std::invalid_argument("unknown experiment '" + name + "'");

    ParamMap params = found->info.defaults;
    for (const auto& [key, value] : overrides) {
        const auto it = params.find(key);
        if (it == params.end())
            throw std::invalid_argument("unknown parameter '" + key + "' for experiment '" +
                                        name + "'");
        it->second = value;
    }

    Report report;
    report.experiment = name;
    report.seed = seed;
    Ctx ctx{name, seed, std::move(params), &report};
    found->runner(ctx);
    for (const auto& r : report.rows)
        if (r.oracle_source.empty())
            throw std::logic_error("report row without an oracle source");
    return report;
}

} // namespace stoklab
