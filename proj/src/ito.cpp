#include "stoklab/ito.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "stoklab/brownian.hpp"
#include "stoklab/parallel.hpp"

namespace stoklab {

SimpleIntegrand SimpleIntegrand::constants(std::vector<double> partition,
                                           std::vector<double> values) {
    check_strictly_increasing(partition, "SimpleIntegrand");
    if (values.size() + 1 != partition.size())
        throw std::invalid_argument("SimpleIntegrand: need one value per cell");
    SimpleIntegrand e;
    e.partition = std::move(partition);
    auto vals = std::make_shared<std::vector<double>>(std::move(values));
    e.value_on = [vals](std::size_t k, PathView) { return (*vals)[k - 1]; };
    return e;
}

namespace {

// Index of t in the grid, or throw; grids are built by the same arithmetic
// so matching is exact up to a tiny absolute slack.
std::size_t locate(const std::vector<double>& times, double t) {
    auto it = std::lower_bound(times.begin(), times.end(), t - 1e-12);
    if (it == times.end() || std::fabs(*it - t) > 1e-12)
        throw std::invalid_argument("ito_integral_simple: bm grid does not refine the partition");
    return static_cast<std::size_t>(it - times.begin());
}

} // namespace

Path ito_integral_simple(const SimpleIntegrand& e, const Path& bm) {
    if (e.partition.empty() || !e.value_on)
        throw std::invalid_argument("ito_integral_simple: empty integrand");
    std::vector<std::size_t> knot(e.partition.size());
    for (std::size_t k = 0; k < e.partition.size(); ++k)
        knot[k] = locate(bm.times, e.partition[k]);

    Path out;
    out.times = bm.times;
    out.values.assign(bm.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = 1; k < e.partition.size(); ++k) {
        const double ev = e.value_on(k, prefix_of(bm, knot[k - 1] + 1));
        for (std::size_t i = knot[k - 1] + 1; i <= knot[k]; ++i) {
            acc += ev * (bm.values[i] - bm.values[i - 1]);
            out.values[i] = acc;
        }
    }
    // beyond the partition the integrand is undefined; leave the tail flat
    for (std::size_t i = knot.back() + 1; i < bm.size(); ++i) out.values[i] = acc;
    return out;
}

Path ito_integral_leftpoint(const std::function<double(double, PathView)>& f, const Path& bm) {
    Path out;
    out.times = bm.times;
    out.values.assign(bm.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 1; i < bm.size(); ++i) {
        const double ev = f(bm.times[i - 1], prefix_of(bm, i));
        acc += ev * (bm.values[i] - bm.values[i - 1]);
        out.values[i] = acc;
    }
    return out;
}

Path stratonovich_integral_midpoint(const std::function<double(double, PathView)>& f,
                                    const Path& bm) {
    Path out;
    out.times = bm.times;
    out.values.assign(bm.size(), 0.0);
    double acc = 0.0;
    double prev = f(bm.times[0], prefix_of(bm, 1));
    for (std::size_t i = 1; i < bm.size(); ++i) {
        const double cur = f(bm.times[i], prefix_of(bm, i + 1));
        acc += 0.5 * (prev + cur) * (bm.values[i] - bm.values[i - 1]);
        out.values[i] = acc;
        prev = cur;
    }
    return out;
}

IsometryAudit isometry_audit(const SimpleIntegrand& e,
                             const std::function<double(double)>& second_moment,
                             std::int64_t n_paths, std::size_t steps_per_cell,
                             RandomStream family) {
    if (n_paths < 2) throw std::invalid_argument("isometry_audit: need n_paths >= 2");
    if (steps_per_cell < 1) throw std::invalid_argument("isometry_audit: steps_per_cell >= 1");

    std::vector<double> grid;
    grid.reserve((e.partition.size() - 1) * steps_per_cell + 1);
    grid.push_back(e.partition.front());
    for (std::size_t k = 1; k < e.partition.size(); ++k) {
        const double a = e.partition[k - 1], b = e.partition[k];
        for (std::size_t j = 1; j <= steps_per_cell; ++j)
            grid.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(steps_per_cell));
    }

    std::vector<double> sq(static_cast<std::size_t>(n_paths));
    par::parallel_for(n_paths, [&](std::int64_t i) {
        const Path bm = sample_bm_increments(
            family.spawn(family.stream_id + static_cast<std::uint64_t>(i)), grid);
        const Path integral = ito_integral_simple(e, bm);
        const double v = integral.values.back();
        sq[static_cast<std::size_t>(i)] = v * v;
    });

    double rhs = 0.0;
    for (std::size_t k = 1; k < e.partition.size(); ++k)
        rhs += second_moment(e.partition[k - 1]) * (e.partition[k] - e.partition[k - 1]);

    return IsometryAudit{mc_from_samples(sq), rhs};
}

Path exponential_supermartingale(const std::function<double(double, PathView)>& g,
                                 const Path& bm) {
    Path out;
    out.times = bm.times;
    out.values.assign(bm.size(), 0.0);
    double stoch = 0.0, quad = 0.0;
    out.values[0] = 1.0;
    for (std::size_t i = 1; i < bm.size(); ++i) {
        const double ev = g(bm.times[i - 1], prefix_of(bm, i));
        stoch += ev * (bm.values[i] - bm.values[i - 1]);
        quad += ev * ev * (bm.times[i] - bm.times[i - 1]);
        out.values[i] = std::exp(stoch - 0.5 * quad);
    }
    return out;
}

} // namespace stoklab
