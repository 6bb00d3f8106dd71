#include "stoklab/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stoklab/errors.hpp"
#include "stoklab/parallel.hpp"

namespace stoklab {

namespace {

// First-order barrier-shift constant for discretely monitored exits.
constexpr double kBarrierShift = 0.5826;

double fd_d1(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double fd_d2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Thomas algorithm; diag/lower/upper are overwritten.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1]))
            throw NumericError("tridiagonal solve: singular pivot");
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1]))
        throw NumericError("tridiagonal solve: singular pivot");
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace

double apply_generator(const DiffusionSpec& spec, const TestFunction& phi, double x) {
    const double h = 1e-5 * std::max(1.0, std::fabs(x));
    const double p1 = phi.d1 ? phi.d1(x) : fd_d1(phi.value, x, h);
    const double p2 = phi.d2 ? phi.d2(x) : fd_d2(phi.value, x, h);
    const double g = spec.diffusion(x, 0.0);
    return spec.drift(x, 0.0) * p1 + 0.5 * g * g * p2;
}

double apply_adjoint(const DiffusionSpec& spec, const TestFunction& psi, double y) {
    const bool analytic = psi.d1 && psi.d2 && spec.drift_dx && spec.diffusion_dx;
    if (analytic) {
        // Treats g as having zero curvature (true for every catalog spec:
        // constant or linear diffusion coefficients).
        const double f = spec.drift(y, 0.0);
        const double fp = spec.drift_dx(y, 0.0);
        const double g = spec.diffusion(y, 0.0);
        const double gp = spec.diffusion_dx(y, 0.0);
        const double v = psi.value(y), v1 = psi.d1(y), v2 = psi.d2(y);
        const double second = 0.5 * (2.0 * gp * gp * v + 4.0 * g * gp * v1 + g * g * v2);
        const double first = fp * v + f * v1;
        return second - first;
    }
    auto fpsi = [&](double z) { return spec.drift(z, 0.0) * psi.value(z); };
    auto g2psi = [&](double z) {
        const double g = spec.diffusion(z, 0.0);
        return g * g * psi.value(z);
    };
    const double h1 = 6e-6 * std::max(1.0, std::fabs(y));
    const double h2 = 1.2e-4 * std::max(1.0, std::fabs(y));
    return 0.5 * fd_d2(g2psi, y, h2) - fd_d1(fpsi, y, h1);
}

double GridFunction::value_at(double xq) const {
    if (xq < x.front() || xq > x.back())
        throw std::invalid_argument("GridFunction::value_at: query outside the grid");
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    if (it == x.begin()) return u.front();
    if (it == x.end()) return u.back();
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double w = (xq - x[j - 1]) / (x[j] - x[j - 1]);
    return (1.0 - w) * u[j - 1] + w * u[j];
}

GridFunction solve_exit_bvp(const BvpProblem& problem) {
    if (!(problem.a < problem.b)) throw std::invalid_argument("solve_exit_bvp: need a < b");
    if (problem.n_cells < 16) throw std::invalid_argument("solve_exit_bvp: need N >= 16");
    const int N = problem.n_cells;
    const double h = (problem.b - problem.a) / static_cast<double>(N);

    GridFunction out;
    out.x.resize(static_cast<std::size_t>(N) + 1);
    out.u.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 0; i <= N; ++i) out.x[static_cast<std::size_t>(i)] = problem.a + h * i;
    out.x.back() = problem.b;

    // Cell Peclet guard: central differences stay monotone only while
    // |f| h <= g^2; otherwise report the grid size that restores it.
    double worst_ratio = 0.0;
    for (int i = 1; i < N; ++i) {
        const double x = out.x[static_cast<std::size_t>(i)];
        const double f = problem.spec.drift(x, 0.0);
        const double g = problem.spec.diffusion(x, 0.0);
        if (!(g * g > 0.0))
            throw std::invalid_argument("solve_exit_bvp: diffusion must be nonzero on (a,b)");
        worst_ratio = std::max(worst_ratio, std::fabs(f) / (g * g));
        const double q = problem.killing ? problem.killing(x) : 0.0;
        if (q < 0.0) throw std::invalid_argument("solve_exit_bvp: killing rate must be >= 0");
    }
    if (worst_ratio * h > 1.0) {
        const int required = static_cast<int>(std::ceil((problem.b - problem.a) * worst_ratio)) + 1;
        throw PecletError("solve_exit_bvp: cell Peclet condition violated", required);
    }

    // Interior rows of (1/2) g^2 u'' + f u' - q u = theta.
    const std::size_t n = static_cast<std::size_t>(N) - 1;
    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = out.x[k + 1];
        const double f = problem.spec.drift(x, 0.0);
        const double g = problem.spec.diffusion(x, 0.0);
        const double q = problem.killing ? problem.killing(x) : 0.0;
        const double diffw = 0.5 * g * g / (h * h);
        const double advw = f / (2.0 * h);
        lower[k] = diffw - advw;
        diag[k] = -2.0 * diffw - q;
        upper[k] = diffw + advw;
        rhs[k] = problem.theta ? problem.theta(x) : 0.0;
    }
    rhs[0] -= lower[0] * problem.ua;
    rhs[n - 1] -= upper[n - 1] * problem.ub;

    solve_tridiagonal(lower, diag, upper, rhs);
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(rhs[k])) throw NumericError("solve_exit_bvp: non-finite solution");
        out.u[k + 1] = rhs[k];
    }
    out.u.front() = problem.ua;
    out.u.back() = problem.ub;
    return out;
}

ExitStatistics mc_exit_statistics(const DiffusionSpec& spec, double x0, double a, double b,
                                  double dt, std::int64_t n_paths, std::vector<double> lambdas,
                                  RandomStream family, std::int64_t max_steps) {
    if (!(a < x0 && x0 < b)) throw std::invalid_argument("mc_exit_statistics: need a < x0 < b");
    if (!(dt > 0.0)) throw std::invalid_argument("mc_exit_statistics: dt must be > 0");
    if (n_paths < 2) throw std::invalid_argument("mc_exit_statistics: need n_paths >= 2");

    const std::size_t np = static_cast<std::size_t>(n_paths);
    std::vector<double> tau(np, 0.0);
    std::vector<std::uint8_t> hit_lower(np, 0), finished(np, 1);

    const double sqdt = std::sqrt(dt);
    par::parallel_for(n_paths, [&](std::int64_t i) {
        RandomStream s = family.spawn(family.stream_id + static_cast<std::uint64_t>(i));
        double x = x0;
        double t = 0.0;
        std::int64_t steps = 0;
        for (;;) {
            if (steps++ >= max_steps) {
                finished[static_cast<std::size_t>(i)] = 0;
                break;
            }
            x += spec.drift(x, t) * dt + spec.diffusion(x, t) * sqdt * s.gaussian();
            t += dt;
            if (!std::isfinite(x))
                throw ExplosionError("mc_exit_statistics: non-finite state", t);
            if (x <= a || x >= b) {
                tau[static_cast<std::size_t>(i)] = t;
                hit_lower[static_cast<std::size_t>(i)] = (x <= a) ? 1 : 0;
                break;
            }
        }
    });

    ExitStatistics r;
    r.lambdas = lambdas;
    OnlineStats sp, st, st2, stb;
    std::vector<OnlineStats> sl(lambdas.size()), slb(lambdas.size());
    for (std::size_t i = 0; i < np; ++i) {
        if (!finished[i]) {
            ++r.unfinished;
            continue;
        }
        sp.add(hit_lower[i]);
        st.add(tau[i]);
        st2.add(tau[i] * tau[i]);
        stb.add(hit_lower[i] ? 0.0 : tau[i]);
        for (std::size_t l = 0; l < lambdas.size(); ++l) {
            const double w = std::exp(-lambdas[l] * tau[i]);
            sl[l].add(w);
            slb[l].add(hit_lower[i] ? 0.0 : w);
        }
    }
    r.p_hit_lower = sp.estimate();
    r.mean_tau = st.estimate();
    r.mean_tau_sq = st2.estimate();
    r.mean_tau_on_hit_upper = stb.estimate();
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
        r.laplace.push_back(sl[l].estimate());
        r.laplace_on_hit_upper.push_back(slb[l].estimate());
    }

    // First-order barrier-shift allowances: a discrete monitor behaves like
    // a boundary pushed outward by kBarrierShift * g * sqrt(dt).
    const double shift =
        kBarrierShift * sqdt * std::max(std::fabs(spec.diffusion(a, 0.0)),
                                        std::fabs(spec.diffusion(b, 0.0)));
    const double width = b - a;
    const double half = 0.5 * width;
    r.bias_p = 2.0 * shift / width;
    r.bias_tau = shift * width;
    r.bias_tau_sq = shift * (20.0 / 3.0) * half * half * half;
    double lmax = 0.0;
    for (double l : lambdas) lmax = std::max(lmax, l);
    r.bias_laplace = lmax * r.bias_tau;
    return r;
}

BallExitResult mc_ball_exit(RandomStream family, int dim, double radius,
                            const std::vector<double>& x0, double dt, std::int64_t n_paths,
                            std::optional<double> outer_radius, std::int64_t max_steps) {
    if (dim < 1) throw std::invalid_argument("mc_ball_exit: dim must be >= 1");
    if (x0.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("mc_ball_exit: x0 has wrong dimension");
    if (!(dt > 0.0) || !(radius > 0.0))
        throw std::invalid_argument("mc_ball_exit: dt and radius must be > 0");
    double norm0 = 0.0;
    for (double c : x0) norm0 += c * c;
    norm0 = std::sqrt(norm0);
    if (outer_radius) {
        if (!(radius < norm0 && norm0 < *outer_radius))
            throw std::invalid_argument("mc_ball_exit: annulus mode needs R < |x0| < outer");
    } else if (!(norm0 < radius)) {
        throw std::invalid_argument("mc_ball_exit: exit mode needs |x0| < R");
    }

    const std::size_t np = static_cast<std::size_t>(n_paths);
    std::vector<double> tau(np, 0.0);
    std::vector<std::uint8_t> inner_first(np, 0), finished(np, 1);
    const double sqdt = std::sqrt(dt);
    const double r2 = radius * radius;
    const double out2 = outer_radius ? *outer_radius * *outer_radius : 0.0;

    par::parallel_for(n_paths, [&](std::int64_t i) {
        RandomStream s = family.spawn(family.stream_id + static_cast<std::uint64_t>(i));
        std::vector<double> x = x0;
        double t = 0.0;
        std::int64_t steps = 0;
        for (;;) {
            if (steps++ >= max_steps) {
                finished[static_cast<std::size_t>(i)] = 0;
                break;
            }
            double n2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                x[static_cast<std::size_t>(d)] += sqdt * s.gaussian();
                n2 += x[static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
            }
            t += dt;
            if (outer_radius) {
                if (n2 <= r2) {
                    inner_first[static_cast<std::size_t>(i)] = 1;
                    tau[static_cast<std::size_t>(i)] = t;
                    break;
                }
                if (n2 >= out2) {
                    tau[static_cast<std::size_t>(i)] = t;
                    break;
                }
            } else if (n2 >= r2) {
                tau[static_cast<std::size_t>(i)] = t;
                break;
            }
        }
    });

    BallExitResult r;
    OnlineStats st, sp;
    for (std::size_t i = 0; i < np; ++i) {
        if (!finished[i]) {
            ++r.unfinished;
            continue;
        }
        st.add(tau[i]);
        sp.add(inner_first[i]);
    }
    r.mean_tau = st.estimate();
    r.p_inner_first = sp.estimate();
    const double shift = kBarrierShift * sqdt;
    r.bias_tau = 2.0 * radius * shift / static_cast<double>(dim);
    r.bias_p = outer_radius ? 2.0 * shift / (norm0 - radius) : 0.0;
    return r;
}

double DensityGrid::mass() const {
    double m = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        m += 0.5 * (rho[i] + rho[i - 1]) * (x[i] - x[i - 1]);
    return m;
}

DensityEvolution evolve_density(const DiffusionSpec& spec, const DensityGrid& rho0, double dt,
                                double T) {
    if (rho0.x.size() < 3 || rho0.x.size() != rho0.rho.size())
        throw std::invalid_argument("evolve_density: bad initial grid");
    if (!(dt > 0.0) || !(T > 0.0)) throw std::invalid_argument("evolve_density: dt, T > 0");
    const std::size_t m = rho0.x.size();
    const double h = rho0.x[1] - rho0.x[0];

    // coefficient tables at grid nodes
    std::vector<double> fcoef(m), g2coef(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double xi = rho0.x[i];
        fcoef[i] = spec.drift(xi, 0.0);
        const double g = spec.diffusion(xi, 0.0);
        g2coef[i] = g * g;
    }

    const std::size_t n = m - 2; // interior nodes
    std::vector<double> rho = rho0.rho;
    const double mass0 = rho0.mass();

    const std::int64_t n_steps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-12));
    for (std::int64_t step = 0; step < n_steps; ++step) {
        const double tau = std::min(dt, T - static_cast<double>(step) * dt);
        std::vector<double> lower(n), diag(n), upper(n), rhs(n);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = k + 1;
            // (I - tau L*) rho_new = rho_old with
            // (L* rho)_i = [g2 rho]_{i+1,i,i-1} second difference / 2 h^2
            //            - [f rho]_{i+1} - [f rho]_{i-1} over 2 h
            lower[k] = -tau * (0.5 * g2coef[i - 1] / (h * h) + fcoef[i - 1] / (2.0 * h));
            diag[k] = 1.0 + tau * g2coef[i] / (h * h);
            upper[k] = -tau * (0.5 * g2coef[i + 1] / (h * h) - fcoef[i + 1] / (2.0 * h));
            rhs[k] = rho[i];
        }
        solve_tridiagonal(lower, diag, upper, rhs);
        for (std::size_t k = 0; k < n; ++k) rho[k + 1] = rhs[k];
        rho.front() = 0.0;
        rho.back() = 0.0;
    }

    DensityEvolution out;
    out.density.x = rho0.x;
    out.density.rho = std::move(rho);
    out.density.time = rho0.time + T;
    out.mass_drift = std::fabs(out.density.mass() - mass0);
    out.accuracy_warning = out.mass_drift > 1e-3;
    return out;
}

std::vector<double> arcsine_occupation(RandomStream family, double t, double dt,
                                       std::int64_t n_paths) {
    if (!(dt > 0.0) || !(t > 0.0)) throw std::invalid_argument("arcsine_occupation: t, dt > 0");
    if (dt > 1e-3 * t)
        throw std::invalid_argument("arcsine_occupation: need dt <= 1e-3 t");
    const std::int64_t n_steps = static_cast<std::int64_t>(std::llround(t / dt));
    std::vector<double> frac(static_cast<std::size_t>(n_paths));
    const double sqdt = std::sqrt(dt);
    par::parallel_for(n_paths, [&](std::int64_t i) {
        RandomStream s = family.spawn(family.stream_id + static_cast<std::uint64_t>(i));
        double b = 0.0;
        std::int64_t above = 0;
        for (std::int64_t k = 0; k < n_steps; ++k) {
            b += sqdt * s.gaussian();
            if (b > 0.0) ++above;
        }
        frac[static_cast<std::size_t>(i)] =
            static_cast<double>(above) / static_cast<double>(n_steps);
    });
    return frac;
}

namespace {

double require(const std::map<std::string, double>& p, const char* key) {
    const auto it = p.find(key);
    if (it == p.end())
        throw std::invalid_argument(std::string("closed_form: missing parameter ") + key);
    return it->second;
}

double harmonic_radial(int dim, double r) {
    if (dim == 1) return std::fabs(r);
    if (dim == 2) return -std::log(r);
    return std::pow(r, 2.0 - static_cast<double>(dim));
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0) throw NumericError("integrate_adaptive: recursion limit");
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive: need b > a");
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(a, b, fa, fm, fb);
    const double scale = std::max({std::fabs(whole), std::fabs(b - a), 1e-300});
    return adaptive_step(f, a, b, fa, fm, fb, whole, rel_tol * scale, 60);
}

double closed_form(const std::string& tag, const std::map<std::string, double>& params) {
    if (tag == "interval-hit-lower") {
        const double x = require(params, "x"), a = require(params, "a"), b = require(params, "b");
        if (!(a < x && x < b)) throw std::invalid_argument("closed_form: need a < x < b");
        return (b - x) / (b - a);
    }
    if (tag == "interval-mean-exit") {
        const double x = require(params, "x"), a = require(params, "a"), b = require(params, "b");
        if (!(a < x && x < b)) throw std::invalid_argument("closed_form: need a < x < b");
        return (x - a) * (b - x);
    }
    if (tag == "interval-mean-exit-sq") {
        const double x = require(params, "x"), a = require(params, "a");
        if (!(std::fabs(x) < a)) throw std::invalid_argument("closed_form: need |x| < a");
        return x * x * x * x / 3.0 - 2.0 * a * a * x * x + 5.0 * a * a * a * a / 3.0;
    }
    if (tag == "interval-laplace") {
        const double x = require(params, "x"), a = require(params, "a");
        const double l = require(params, "lambda");
        if (!(l > 0.0) || !(std::fabs(x) <= a))
            throw std::invalid_argument("closed_form: need lambda > 0 and |x| <= a");
        const double s = std::sqrt(2.0 * l);
        return std::cosh(s * x) / std::cosh(s * a);
    }
    if (tag == "interval-laplace-hit-upper") {
        const double x = require(params, "x"), a = require(params, "a");
        const double l = require(params, "lambda");
        if (!(l > 0.0) || !(std::fabs(x) <= a))
            throw std::invalid_argument("closed_form: need lambda > 0 and |x| <= a");
        const double s = std::sqrt(2.0 * l);
        return std::sinh(s * (x + a)) / std::sinh(s * 2.0 * a);
    }
    if (tag == "interval-mean-exit-hit-upper") {
        const double x = require(params, "x"), a = require(params, "a");
        if (!(std::fabs(x) < a)) throw std::invalid_argument("closed_form: need |x| < a");
        return (a * a - x * x) * (3.0 * a + x) / (6.0 * a);
    }
    if (tag == "interval-cond-mean-exit") {
        const double x = require(params, "x"), a = require(params, "a");
        if (!(std::fabs(x) < a)) throw std::invalid_argument("closed_form: need |x| < a");
        return (a - x) * (3.0 * a + x) / 3.0;
    }
    if (tag == "ball-mean-exit") {
        const double n = require(params, "dim"), R = require(params, "radius");
        const double nx = require(params, "norm_x");
        if (!(nx < R)) throw std::invalid_argument("closed_form: need |x| < R");
        return (R * R - nx * nx) / n;
    }
    if (tag == "annulus-hit-inner") {
        const int n = static_cast<int>(require(params, "dim"));
        const double R = require(params, "radius"), outer = require(params, "outer");
        const double nx = require(params, "norm_x");
        if (!(R < nx && nx < outer))
            throw std::invalid_argument("closed_form: need R < |x| < outer");
        const double num = harmonic_radial(n, nx) - harmonic_radial(n, outer);
        const double den = harmonic_radial(n, R) - harmonic_radial(n, outer);
        return num / den;
    }
    if (tag == "transience-hit-prob") {
        const double n = require(params, "dim"), R = require(params, "radius");
        const double nx = require(params, "norm_x");
        if (!(n > 2.0) || !(nx > R))
            throw std::invalid_argument("closed_form: need dim > 2 and |x| > R");
        return std::pow(R / nx, n - 2.0);
    }
    if (tag == "gbm-hit-upper") {
        const double r = require(params, "r"), x = require(params, "x"), b = require(params, "b");
        if (!(r < 0.5) || !(0.0 < x && x < b))
            throw std::invalid_argument("closed_form: need r < 1/2, 0 < x < b");
        return std::pow(x / b, 1.0 - 2.0 * r);
    }
    if (tag == "gbm-hit-upper-before") {
        const double r = require(params, "r"), x = require(params, "x");
        const double a = require(params, "a"), b = require(params, "b");
        if (!(0.0 < a && a < x && x < b))
            throw std::invalid_argument("closed_form: need 0 < a < x < b");
        const double gamma = 1.0 - 2.0 * r;
        if (gamma == 0.0)
            return (std::log(x) - std::log(a)) / (std::log(b) - std::log(a));
        return (std::pow(x, gamma) - std::pow(a, gamma)) /
               (std::pow(b, gamma) - std::pow(a, gamma));
    }
    if (tag == "gbm-mean-hit") {
        const double r = require(params, "r"), x = require(params, "x"), b = require(params, "b");
        if (!(r > 0.5) || !(0.0 < x && x < b))
            throw std::invalid_argument("closed_form: need r > 1/2, 0 < x < b");
        return std::log(b / x) / (r - 0.5);
    }
    if (tag == "drifted-bm-laplace") {
        // downward drift: tau = first passage of B_t - drift*t to +level;
        // at lambda -> 0 the value tends to exp(-2 level drift), the total
        // probability of ever reaching the level.
        const double a = require(params, "level"), b = require(params, "drift");
        const double l = require(params, "lambda");
        if (!(a > 0.0) || l < 0.0)
            throw std::invalid_argument("closed_form: need level > 0 and lambda >= 0");
        return std::exp(-a * (b + std::sqrt(b * b + 2.0 * l)));
    }
    if (tag == "ou-exit-lower") {
        const double x = require(params, "x"), a = require(params, "a"), b = require(params, "b");
        const double sigma = require(params, "sigma");
        if (!(a < x && x < b) || !(sigma > 0.0))
            throw std::invalid_argument("closed_form: need a < x < b and sigma > 0");
        auto w = [sigma](double y) { return std::exp(y * y / (sigma * sigma)); };
        const double num = integrate_adaptive(w, x, b);
        const double den = integrate_adaptive(w, a, b);
        return num / den;
    }
    throw std::invalid_argument("closed_form: unknown tag '" + tag + "'");
}

} // namespace stoklab
