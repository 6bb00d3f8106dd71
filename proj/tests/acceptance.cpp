// Acceptance suite: one pass/fail line per criterion. Each criterion pulls
// named rows out of the experiment registry at the default seed, so every
// line here is reproducible from the command line, e.g.
//
//   stoklab run exit-interval --seed 1
//
// The final criterion reruns every report single-threaded and demands
// byte-identical output (timing redacted).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "stoklab/experiments.hpp"
#include "stoklab/parallel.hpp"

using namespace stoklab;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Criterion {
    int id;
    std::string title;
    // experiment -> rows that must pass (empty list = all rows)
    std::vector<std::pair<std::string, std::vector<std::string>>> picks;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c = {
        {1, "galton-watson extinction: fixed point and tree frequency",
         {{"gw-extinction", {"fixed-point-rho", "mc-extinction-frequency"}}}},
        {2, "polya urn: exact uniform law and histogram agreement",
         {{"polya-limit", {"exact-uniform-n3", "mc-vs-dp-histogram"}}}},
        {3, "doubling strategy: exact stopped-wealth law",
         {{"doubling-strategy", {"stopped-law-exact-n20", "full-enumeration-n12"}}}},
        {4, "doob, kolmogorov and L2 maximal inequalities",
         {{"doob-audit", {}}}},
        {5, "brownian running maximum within 0.01",
         {{"bm-maximum", {"max-law-mc"}}}},
        {6, "cauchy hitting law at the 1 percent KS level",
         {{"cauchy-hit", {"ks-vs-cauchy"}}}},
        {7, "int B dB: left-point and midpoint budgets",
         {{"ito-bdb", {}}}},
        {8, "ito isometry on the dyadic integrand",
         {{"ito-isometry", {"dyadic-second-moment"}}}},
        {9, "euler strong order on multiplicative noise",
         {{"euler-order", {"gbm-strong-slope"}}}},
        {10, "interval exit statistics: monte carlo and BVP",
         {{"exit-interval", {}}}},
        {11, "ball exit and annulus hitting in three dimensions",
         {{"ball-exit", {}}}},
        {12, "conditioned mean exit time",
         {{"feynman-kac", {"mc-conditioned-mean", "bvp-conditioned-mean"}}}},
        {13, "fokker-planck: heat kernel, stationarity, adjoint residual",
         {{"fokker-planck", {"heat-kernel-l2", "mass-drift"}},
          {"ou-stationary", {"stationary-sup-change", "adjoint-residual-analytic"}}}},
        {14, "geometric brownian hitting law and mean passage time",
         {{"gbm-hitting", {"hit-prob-limit", "mean-hit-time"}}}},
        {15, "arcsine occupation law",
         {{"arcsine", {"ks-arcsine"}}}},
    };
    return c;
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome evaluate(const Criterion& c, std::map<std::string, Report>& cache) {
    Outcome out;
    for (const auto& [experiment, wanted] : c.picks) {
        if (!cache.count(experiment))
            cache.emplace(experiment, run_experiment(experiment, kSeed, {}));
        const Report& rep = cache.at(experiment);
        for (const auto& row : rep.rows) {
            const bool selected =
                wanted.empty() ||
                std::find(wanted.begin(), wanted.end(), row.check_id) != wanted.end();
            if (!selected) continue;
            if (!row.pass) {
                out.pass = false;
                char buf[160];
                std::snprintf(buf, sizeof buf, " %s:%s |%.6g - %.6g| > %.3g;",
                              experiment.c_str(), row.check_id.c_str(), row.estimate,
                              row.oracle, row.tolerance);
                out.detail += buf;
            }
        }
    }
    if (out.pass) out.detail = "all checks within tolerance";
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    std::map<std::string, Report> cache;
    int failures = 0;

    std::printf("acceptance suite (seed %llu, %d threads)\n",
                static_cast<unsigned long long>(kSeed), par::max_threads());

    for (const auto& c : criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = evaluate(c, cache);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string(" exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("[%2d] %s  %-55s (%s; %.1f s)\n", c.id, out.pass ? "PASS" : "FAIL",
                    c.title.c_str(), out.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }

    // criterion 16: byte-identical reports under a different thread count
    {
        const auto t0 = std::chrono::steady_clock::now();
        bool pass = true;
        std::string detail = "reports replayed byte-identically on one thread";
        const int hw = par::max_threads();
        par::set_threads(1);
        try {
            for (const auto& [name, first] : cache) {
                const Report again = run_experiment(name, kSeed, {});
                if (first.to_csv(true) != again.to_csv(true) ||
                    first.to_json(true) != again.to_json(true)) {
                    pass = false;
                    detail = "report for '" + name + "' changed with the thread count";
                    break;
                }
            }
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        par::set_threads(hw);
        if (!pass) ++failures;
        std::printf("[16] %s  %-55s (%s; %.1f s)\n", pass ? "PASS" : "FAIL",
                    "reproducibility across thread counts", detail.c_str(),
                    seconds_since(t0));
    }

    std::printf("%s: %d of 16 criteria failed\n", failures == 0 ? "SUCCESS" : "FAILURE",
                failures);
    return failures;
}
