#include "stoklab/sde.hpp"

#include <cmath>
#include <stdexcept>

#include "stoklab/brownian.hpp"
#include "stoklab/errors.hpp"
#include "stoklab/parallel.hpp"

namespace stoklab {

namespace {

constexpr double kStateCap = 1e12;

inline void check_state(double x, double t, const char* who) {
    if (!std::isfinite(x) || std::fabs(x) > kStateCap)
        throw ExplosionError(std::string(who) + ": state left the admissible range", t);
}

} // namespace

Path euler_maruyama(const DiffusionSpec& spec, double x0, const Path& bm) {
    Path out;
    out.times = bm.times;
    out.values.resize(bm.size());
    double x = x0;
    out.values[0] = x;
    for (std::size_t k = 1; k < bm.size(); ++k) {
        const double t = bm.times[k - 1];
        const double dt = bm.times[k] - t;
        const double db = bm.values[k] - bm.values[k - 1];
        x += spec.drift(x, t) * dt + spec.diffusion(x, t) * db;
        check_state(x, bm.times[k], "euler_maruyama");
        out.values[k] = x;
    }
    return out;
}

Path euler_maruyama(const DiffusionSpec& spec, double x0, const std::vector<double>& grid,
                    RandomStream stream) {
    check_strictly_increasing(grid, "euler_maruyama");
    Path out;
    out.times = grid;
    out.values.resize(grid.size());
    double x = x0;
    out.values[0] = x;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double t = grid[k - 1];
        const double dt = grid[k] - t;
        const double db = std::sqrt(dt) * stream.gaussian();
        x += spec.drift(x, t) * dt + spec.diffusion(x, t) * db;
        check_state(x, grid[k], "euler_maruyama");
        out.values[k] = x;
    }
    return out;
}

std::vector<Path> picard_iterate(const DiffusionSpec& spec, double x0, const Path& bm, int k) {
    if (k < 1) throw std::invalid_argument("picard_iterate: k must be >= 1");
    std::vector<Path> iterates;
    iterates.reserve(static_cast<std::size_t>(k) + 1);

    Path cur;
    cur.times = bm.times;
    cur.values.assign(bm.size(), x0);
    iterates.push_back(cur);

    for (int it = 1; it <= k; ++it) {
        Path next;
        next.times = bm.times;
        next.values.resize(bm.size());
        next.values[0] = x0;
        double acc = x0;
        const Path& prev = iterates.back();
        for (std::size_t i = 1; i < bm.size(); ++i) {
            const double t = bm.times[i - 1];
            const double dt = bm.times[i] - t;
            const double db = bm.values[i] - bm.values[i - 1];
            acc += spec.drift(prev.values[i - 1], t) * dt +
                   spec.diffusion(prev.values[i - 1], t) * db;
            check_state(acc, bm.times[i], "picard_iterate");
            next.values[i] = acc;
        }
        iterates.push_back(std::move(next));
    }
    return iterates;
}

namespace {

struct ExactEval {
    const Path& bm;
    double x0;

    Path operator()(const LinearAdditive& m) const {
        Path out = skeleton();
        // X_t = e^alpha(t) [ x0 + int e^-alpha(s) sigma(s) dB_s ]
        std::vector<double> alpha(bm.size());
        if (m.alpha) {
            for (std::size_t i = 0; i < bm.size(); ++i) alpha[i] = m.alpha(bm.times[i]);
        } else {
            alpha[0] = 0.0;
            for (std::size_t i = 1; i < bm.size(); ++i)
                alpha[i] = alpha[i - 1] + m.a(bm.times[i - 1]) * (bm.times[i] - bm.times[i - 1]);
        }
        double integral = 0.0;
        out.values[0] = x0;
        for (std::size_t i = 1; i < bm.size(); ++i) {
            integral += std::exp(-alpha[i - 1]) * m.sigma(bm.times[i - 1]) *
                        (bm.values[i] - bm.values[i - 1]);
            out.values[i] = std::exp(alpha[i]) * (x0 + integral);
        }
        return out;
    }

    Path operator()(const LinearMultiplicative& m) const {
        Path out = skeleton();
        double drift_term = 0.0, stoch = 0.0;
        out.values[0] = x0;
        for (std::size_t i = 1; i < bm.size(); ++i) {
            const double t = bm.times[i - 1];
            const double s = m.sigma(t);
            drift_term += (m.a(t) - 0.5 * s * s) * (bm.times[i] - t);
            stoch += s * (bm.values[i] - bm.values[i - 1]);
            out.values[i] = x0 * std::exp(drift_term + stoch);
        }
        return out;
    }

    Path operator()(const OrnsteinUhlenbeck& m) const {
        Path out = skeleton();
        // I_{k+1} = e^{-rate dt} (I_k + dB_k) keeps the left-point kernel
        // weights e^{-rate (t - s_j)} without an O(n^2) sum.
        double integral = 0.0;
        out.values[0] = x0;
        for (std::size_t i = 1; i < bm.size(); ++i) {
            const double dt = bm.times[i] - bm.times[i - 1];
            const double db = bm.values[i] - bm.values[i - 1];
            integral = std::exp(-m.rate * dt) * (integral + db);
            out.values[i] = x0 * std::exp(-m.rate * bm.times[i]) + m.sigma * integral;
        }
        return out;
    }

    Path operator()(const Gbm& m) const {
        Path out = skeleton();
        for (std::size_t i = 0; i < bm.size(); ++i) {
            const double t = bm.times[i];
            out.values[i] =
                x0 * std::exp((m.r - 0.5 * m.sigma * m.sigma) * t + m.sigma * bm.values[i]);
        }
        return out;
    }

    Path operator()(const BrownianBridge& m) const {
        if (bm.times.back() >= 1.0)
            throw std::invalid_argument("exact_solution: bridge grid must stay inside [0,1)");
        Path out = skeleton();
        double integral = 0.0;
        out.values[0] = m.a;
        for (std::size_t i = 1; i < bm.size(); ++i) {
            integral += (bm.values[i] - bm.values[i - 1]) / (1.0 - bm.times[i - 1]);
            const double t = bm.times[i];
            out.values[i] = m.a * (1.0 - t) + m.b * t + (1.0 - t) * integral;
        }
        return out;
    }

    Path operator()(const DriftedBm& m) const {
        Path out = skeleton();
        for (std::size_t i = 0; i < bm.size(); ++i)
            out.values[i] = x0 + bm.values[i] + m.mu * bm.times[i];
        return out;
    }

    Path operator()(const IntegratingFactor& m) const {
        Path out = skeleton();
        // Y_t = E_t (x0 + r int_0^t E_s^{-1} ds), E_t = exp(alpha B_t - alpha^2 t / 2)
        double quad = 0.0;
        out.values[0] = x0;
        for (std::size_t i = 1; i < bm.size(); ++i) {
            const double tp = bm.times[i - 1];
            quad += std::exp(-m.alpha * bm.values[i - 1] + 0.5 * m.alpha * m.alpha * tp) *
                    (bm.times[i] - tp);
            const double env = std::exp(m.alpha * bm.values[i] -
                                        0.5 * m.alpha * m.alpha * bm.times[i]);
            out.values[i] = env * (x0 + m.r * quad);
        }
        return out;
    }

    Path skeleton() const {
        Path p;
        p.times = bm.times;
        p.values.resize(bm.size());
        return p;
    }
};

struct SpecOf {
    DiffusionSpec operator()(const LinearAdditive& m) const {
        auto a = m.a, s = m.sigma;
        return DiffusionSpec{[a](double x, double t) { return a(t) * x; },
                             [s](double, double t) { return s(t); },
                             [a](double, double t) { return a(t); },
                             [](double, double) { return 0.0; }};
    }
    DiffusionSpec operator()(const LinearMultiplicative& m) const {
        auto a = m.a, s = m.sigma;
        return DiffusionSpec{[a](double x, double t) { return a(t) * x; },
                             [s](double x, double t) { return s(t) * x; },
                             [a](double, double t) { return a(t); },
                             [s](double, double t) { return s(t); }};
    }
    DiffusionSpec operator()(const OrnsteinUhlenbeck& m) const {
        const double rate = m.rate, sigma = m.sigma;
        return DiffusionSpec{[rate](double x, double) { return -rate * x; },
                             [sigma](double, double) { return sigma; },
                             [rate](double, double) { return -rate; },
                             [](double, double) { return 0.0; }};
    }
    DiffusionSpec operator()(const Gbm& m) const {
        const double r = m.r, sigma = m.sigma;
        return DiffusionSpec{[r](double x, double) { return r * x; },
                             [sigma](double x, double) { return sigma * x; },
                             [r](double, double) { return r; },
                             [sigma](double, double) { return sigma; }};
    }
    DiffusionSpec operator()(const BrownianBridge& m) const {
        const double b = m.b;
        return DiffusionSpec{[b](double x, double t) { return (b - x) / (1.0 - t); },
                             [](double, double) { return 1.0; },
                             [](double, double t) { return -1.0 / (1.0 - t); },
                             [](double, double) { return 0.0; }};
    }
    DiffusionSpec operator()(const DriftedBm& m) const {
        const double mu = m.mu;
        return DiffusionSpec{[mu](double, double) { return mu; },
                             [](double, double) { return 1.0; },
                             [](double, double) { return 0.0; },
                             [](double, double) { return 0.0; }};
    }
    DiffusionSpec operator()(const IntegratingFactor& m) const {
        const double r = m.r, alpha = m.alpha;
        return DiffusionSpec{[r](double, double) { return r; },
                             [alpha](double x, double) { return alpha * x; },
                             [](double, double) { return 0.0; },
                             [alpha](double, double) { return alpha; }};
    }
};

} // namespace

Path exact_solution(const ExactModel& model, const Path& bm, double x0) {
    return std::visit(ExactEval{bm, x0}, model);
}

DiffusionSpec spec_of(const ExactModel& model) {
    return std::visit(SpecOf{}, model);
}

std::vector<StrongErrorRow> strong_error_table(const DiffusionSpec& spec, const ExactModel& model,
                                               double x0, double t_final,
                                               const std::vector<std::size_t>& steps_per_level,
                                               std::int64_t n_paths, RandomStream family) {
    if (steps_per_level.empty())
        throw std::invalid_argument("strong_error_table: no grid levels");
    const std::size_t finest = steps_per_level.back();
    for (std::size_t s : steps_per_level)
        if (s < 1 || finest % s != 0)
            throw std::invalid_argument("strong_error_table: levels must divide the finest grid");

    const std::size_t n_levels = steps_per_level.size();
    std::vector<double> abs_err(n_levels * static_cast<std::size_t>(n_paths), 0.0);

    par::parallel_for(n_paths, [&](std::int64_t p) {
        const auto grid = uniform_grid(0.0, t_final, finest);
        const Path fine = sample_bm_increments(
            family.spawn(family.stream_id + static_cast<std::uint64_t>(p)), grid);
        const double exact_T = exact_solution(model, fine, x0).values.back();
        for (std::size_t lv = 0; lv < n_levels; ++lv) {
            const std::size_t stride = finest / steps_per_level[lv];
            Path coarse;
            coarse.times.reserve(steps_per_level[lv] + 1);
            coarse.values.reserve(steps_per_level[lv] + 1);
            for (std::size_t i = 0; i <= finest; i += stride) {
                coarse.times.push_back(fine.times[i]);
                coarse.values.push_back(fine.values[i]);
            }
            const double euler_T = euler_maruyama(spec, x0, coarse).values.back();
            abs_err[lv * static_cast<std::size_t>(n_paths) + static_cast<std::size_t>(p)] =
                std::fabs(euler_T - exact_T);
        }
    });

    std::vector<StrongErrorRow> rows(n_levels);
    for (std::size_t lv = 0; lv < n_levels; ++lv) {
        double sum = 0.0;
        for (std::int64_t p = 0; p < n_paths; ++p)
            sum += abs_err[lv * static_cast<std::size_t>(n_paths) + static_cast<std::size_t>(p)];
        rows[lv].dt = t_final / static_cast<double>(steps_per_level[lv]);
        rows[lv].mean_abs_error = sum / static_cast<double>(n_paths);
    }
    return rows;
}

double log_log_slope(const std::vector<StrongErrorRow>& rows) {
    if (rows.size() < 2) throw std::invalid_argument("log_log_slope: need at least two rows");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        if (!(r.mean_abs_error > 0.0))
            throw std::invalid_argument("log_log_slope: errors must be positive");
        const double x = std::log(r.dt), y = std::log(r.mean_abs_error);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace stoklab
