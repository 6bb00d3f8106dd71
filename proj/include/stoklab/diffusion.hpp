#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stoklab/errors.hpp"
#include "stoklab/rng.hpp"
#include "stoklab/sde.hpp"
#include "stoklab/stats.hpp"

namespace stoklab {

/// Scalar test function with optional analytic derivatives; central finite
/// differences fill in whatever is missing.
struct TestFunction {
    std::function<double(double)> value;
    std::function<double(double)> d1; // optional
    std::function<double(double)> d2; // optional
};

/// Generator of the time-homogeneous diffusion: f(x) phi'(x) + g(x)^2 phi''(x) / 2.
double apply_generator(const DiffusionSpec& spec, const TestFunction& phi, double x);

/// Adjoint: ( g^2 psi )'' / 2 - ( f psi )'. Analytic derivatives of the
/// products are used when the spec and psi both carry derivatives (and g is
/// constant in x or carries diffusion_dx with zero curvature); otherwise
/// the products are differenced directly.
double apply_adjoint(const DiffusionSpec& spec, const TestFunction& psi, double y);

/// Stationary boundary-value problem (Lu) - q u = theta on [a,b] with
/// Dirichlet data; solved with central differences on N cells.
struct BvpProblem {
    DiffusionSpec spec;                   // time-homogeneous: evaluated at t = 0
    double a = 0.0;
    double b = 1.0;
    std::function<double(double)> theta;  // source; nullptr means 0
    std::function<double(double)> killing; // q >= 0; nullptr means 0
    double ua = 0.0;
    double ub = 0.0;
    int n_cells = 64;                     // >= 16
};

struct GridFunction {
    std::vector<double> x;
    std::vector<double> u;

    /// Piecewise-linear evaluation inside [x.front(), x.back()].
    double value_at(double xq) const;
};

GridFunction solve_exit_bvp(const BvpProblem& problem);

/// Monte Carlo exit statistics of Euler paths from (a,b), all from one
/// ensemble. Bias fields are the declared first-order barrier-shift
/// allowances, proportional to sqrt(dt).
struct ExitStatistics {
    McEstimate p_hit_lower;              // P[exit through a]
    McEstimate mean_tau;
    McEstimate mean_tau_sq;
    std::vector<double> lambdas;
    std::vector<McEstimate> laplace;               // E[exp(-lambda tau)]
    std::vector<McEstimate> laplace_on_hit_upper;  // E[exp(-lambda tau) 1{hit b}]
    McEstimate mean_tau_on_hit_upper;              // E[tau 1{hit b}]
    std::int64_t unfinished = 0;
    double bias_p = 0.0;
    double bias_tau = 0.0;
    double bias_tau_sq = 0.0;
    double bias_laplace = 0.0;
};

ExitStatistics mc_exit_statistics(const DiffusionSpec& spec, double x0, double a, double b,
                                  double dt, std::int64_t n_paths, std::vector<double> lambdas,
                                  RandomStream family, std::int64_t max_steps = 50'000'000);

/// Isotropic n-dimensional Brownian exit. Without outer_radius: mean exit
/// time from the ball of the given radius (start inside). With it: the
/// probability of reaching the inner sphere before the outer one (start in
/// the annulus).
struct BallExitResult {
    McEstimate mean_tau;
    McEstimate p_inner_first;
    std::int64_t unfinished = 0;
    double bias_tau = 0.0;
    double bias_p = 0.0;
};

BallExitResult mc_ball_exit(RandomStream family, int dim, double radius,
                            const std::vector<double>& x0, double dt, std::int64_t n_paths,
                            std::optional<double> outer_radius = std::nullopt,
                            std::int64_t max_steps = 500'000'000);

/// A density sampled on a uniform spatial grid.
struct DensityGrid {
    std::vector<double> x;
    std::vector<double> rho;
    double time = 0.0;

    double mass() const; // trapezoid
};

struct DensityEvolution {
    DensityGrid density;
    double mass_drift = 0.0;      // |final mass - initial mass|
    bool accuracy_warning = false; // mass drift above 1e-3
};

/// Implicit-Euler evolution d rho / dt = (g^2 rho)'' / 2 - (f rho)' with
/// zero Dirichlet boundaries, stepped from rho0.time to rho0.time + T.
DensityEvolution evolve_density(const DiffusionSpec& spec, const DensityGrid& rho0, double dt,
                                double T);

/// Occupation fraction of (0, inf) on [0,t] per path, on a grid of step dt
/// (dt <= 1e-3 t). Arcsine distributed in the limit.
std::vector<double> arcsine_occupation(RandomStream family, double t, double dt,
                                       std::int64_t n_paths);

/// Closed-form oracle catalog, keyed by case tag. Unknown tags or missing
/// parameters raise invalid_argument. Quadrature-backed tags are accurate
/// to 1e-10 relative.
///
/// Tags and parameters:
///   interval-hit-lower            x,a,b      (b-x)/(b-a)
///   interval-mean-exit            x,a,b      (x-a)(b-x)
///   interval-mean-exit-sq         x,a        x^4/3 - 2 a^2 x^2 + 5 a^4/3   (interval [-a,a])
///   interval-laplace              x,a,lambda cosh(x sqrt(2 l))/cosh(a sqrt(2 l))
///   interval-laplace-hit-upper    x,a,lambda sinh((x+a) sqrt(2 l))/sinh(2 a sqrt(2 l))
///   interval-mean-exit-hit-upper  x,a        (a^2-x^2)(3a+x)/(6a)
///   interval-cond-mean-exit       x,a        (a-x)(3a+x)/3
///   ball-mean-exit                dim,radius,norm_x    (R^2-|x|^2)/n
///   annulus-hit-inner             dim,radius,outer,norm_x
///   transience-hit-prob           dim,radius,norm_x    (R/|x|)^(n-2)
///   gbm-hit-upper                 r,x,b                 (x/b)^(1-2r), r < 1/2
///   gbm-hit-upper-before          r,x,a,b
///   gbm-mean-hit                  r,x,b                 log(b/x)/(r-1/2), r > 1/2
///   drifted-bm-laplace            level,drift,lambda    exp(-level (drift + sqrt(drift^2+2 l)))
///   ou-exit-lower                 x,a,b,sigma           ratio of two integrals of e^{y^2/s^2}
double closed_form(const std::string& tag, const std::map<std::string, double>& params);

/// Adaptive Simpson quadrature with relative tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10);

} // namespace stoklab
