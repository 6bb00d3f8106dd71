#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "stoklab/path.hpp"
#include "stoklab/rng.hpp"

namespace stoklab {

/// Drift and diffusion coefficients of dX = f dt + g dB, with optional
/// analytic x-derivatives. Values must stay finite on the simulated range;
/// a non-finite state aborts the path with ExplosionError.
struct DiffusionSpec {
    std::function<double(double, double)> drift;     // f(x,t)
    std::function<double(double, double)> diffusion; // g(x,t)
    std::function<double(double, double)> drift_dx;     // optional
    std::function<double(double, double)> diffusion_dx; // optional
};

// Closed-form solution catalog. Each tag carries exactly the parameters its
// formula needs; integral terms are evaluated by left-point quadrature on
// the driving grid, everything else exactly.
struct LinearAdditive {           // dX = a(t) X dt + sigma(t) dB
    std::function<double(double)> a;
    std::function<double(double)> sigma;
    std::function<double(double)> alpha; // exact antiderivative of a; optional
};
struct LinearMultiplicative {     // dX = a(t) X dt + sigma(t) X dB
    std::function<double(double)> a;
    std::function<double(double)> sigma;
};
struct OrnsteinUhlenbeck {        // dX = -rate X dt + sigma dB
    double rate = 1.0;
    double sigma = 1.0;
};
struct Gbm {                      // dX = r X dt + sigma X dB
    double r = 0.0;
    double sigma = 1.0;
};
struct BrownianBridge {           // dX = (b - X)/(1 - t) dt + dB on [0,1)
    double a = 0.0;
    double b = 0.0;
};
struct DriftedBm {                // X = x0 + B_t + mu t
    double mu = 0.0;
};
struct IntegratingFactor {        // dY = r dt + alpha Y dB
    double r = 0.0;
    double alpha = 0.0;
};

using ExactModel = std::variant<LinearAdditive, LinearMultiplicative, OrnsteinUhlenbeck, Gbm,
                                BrownianBridge, DriftedBm, IntegratingFactor>;

/// Euler-Maruyama on the driving path's grid (shared noise).
Path euler_maruyama(const DiffusionSpec& spec, double x0, const Path& bm);

/// Euler-Maruyama with increments sampled from the stream.
Path euler_maruyama(const DiffusionSpec& spec, double x0, const std::vector<double>& grid,
                    RandomStream stream);

/// Fixed-point iteration of the integral equation on a frozen driving path:
/// iterate 0 is the constant x0, and each step integrates the coefficients
/// of the previous iterate with left-point quadrature. Returns iterates
/// 0..k.
std::vector<Path> picard_iterate(const DiffusionSpec& spec, double x0, const Path& bm, int k);

/// Closed form of the tagged model along the driving path.
Path exact_solution(const ExactModel& model, const Path& bm, double x0);

/// DiffusionSpec matching an exact model (for solver comparisons).
DiffusionSpec spec_of(const ExactModel& model);

struct StrongErrorRow {
    double dt;
    double mean_abs_error;
};

/// Shared-noise strong error at final time: the finest grid drives both the
/// reference solution and the coarsened Euler runs. levels gives the number
/// of dyadic grid levels, coarsest first.
std::vector<StrongErrorRow> strong_error_table(const DiffusionSpec& spec, const ExactModel& model,
                                               double x0, double t_final,
                                               const std::vector<std::size_t>& steps_per_level,
                                               std::int64_t n_paths, RandomStream family);

/// Least-squares slope of log(error) against log(dt).
double log_log_slope(const std::vector<StrongErrorRow>& rows);

} // namespace stoklab
