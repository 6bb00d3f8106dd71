// Compares the OpenMP kernels against the serial reference on three
// representative workloads and checks that both give identical numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "stoklab/brownian.hpp"
#include "stoklab/diffusion.hpp"
#include "stoklab/parallel.hpp"
#include "stoklab/sde.hpp"

using namespace stoklab;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double timed(F&& fn) {
    const double t0 = now_seconds();
    fn();
    return now_seconds() - t0;
}

struct Workload {
    const char* name;
    std::int64_t n_paths;
    double (*kernel)(std::int64_t);
};

double bm_sum_kernel(std::int64_t i) {
    RandomStream s = derive_stream(10, static_cast<std::uint64_t>(i));
    double acc = 0.0;
    for (int k = 0; k < 2000; ++k) acc += std::sqrt(5e-4) * s.gaussian();
    return acc;
}

double gbm_kernel(std::int64_t i) {
    static const DiffusionSpec spec = spec_of(Gbm{0.5, 1.0});
    const Path x = euler_maruyama(spec, 1.0, uniform_grid(0.0, 1.0, 1000),
                                  derive_stream(11, static_cast<std::uint64_t>(i)));
    return x.values.back();
}

double exit_kernel(std::int64_t i) {
    RandomStream s = derive_stream(12, static_cast<std::uint64_t>(i));
    double x = 0.0, t = 0.0;
    const double sqdt = std::sqrt(1e-4);
    while (x > -1.0 && x < 2.0) {
        x += sqdt * s.gaussian();
        t += 1e-4;
    }
    return t;
}

} // namespace

int main() {
    std::printf("threads available: %d (openmp %s)\n\n", par::max_threads(),
                par::openmp_enabled() ? "on" : "off");
    std::printf("%-24s %10s %10s %8s %s\n", "workload", "serial[s]", "openmp[s]", "speedup",
                "bitwise");

    const Workload workloads[] = {
        {"brownian increments", 20'000, bm_sum_kernel},
        {"euler gbm paths", 10'000, gbm_kernel},
        {"interval exit times", 5'000, exit_kernel},
    };

    for (const auto& w : workloads) {
        std::vector<double> serial(static_cast<std::size_t>(w.n_paths));
        std::vector<double> parallel(static_cast<std::size_t>(w.n_paths));
        const double ts = timed([&] {
            par::serial_for(w.n_paths,
                            [&](std::int64_t i) { serial[static_cast<std::size_t>(i)] = w.kernel(i); });
        });
        const double tp = timed([&] {
            par::parallel_for(w.n_paths, [&](std::int64_t i) {
                parallel[static_cast<std::size_t>(i)] = w.kernel(i);
            });
        });
        bool same = true;
        for (std::size_t i = 0; i < serial.size(); ++i)
            if (serial[i] != parallel[i]) same = false;
        std::printf("%-24s %10.3f %10.3f %7.2fx %s\n", w.name, ts, tp, ts / tp,
                    same ? "ok" : "MISMATCH");
    }
    return 0;
}
