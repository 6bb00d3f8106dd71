#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "stoklab/discrete.hpp"
#include "stoklab/path.hpp"
#include "stoklab/stats.hpp"

namespace stoklab {

/// Split of an adapted path into martingale + predictable parts; the parts
/// reconstruct the input exactly and the predictable part starts at 0.
struct DoobDecomposition {
    Path martingale_part;
    Path predictable_part;
};

/// (H.X)_n = sum_{m<=n} H_m (X_m - X_{m-1}); H and X share their grid and
/// H_m may depend only on information up to m-1 (caller contract).
Path predictable_transform(const Path& weights, const Path& path);

/// Doob split of f along a chain trajectory: the predictable increment at
/// step n is the exact conditional mean of f(X_n) given X_{n-1}, computed
/// from the transition matrix. Transitions of zero probability are rejected.
DoobDecomposition doob_decomposition_chain(const FiniteChain& chain,
                                           const std::function<double(std::size_t)>& f,
                                           const Path& path);

/// Running sum of exact conditional squared increments of f along the
/// trajectory (the compensator of the squared martingale part).
Path bracket_process_chain(const FiniteChain& chain,
                           const std::function<double(std::size_t)>& f, const Path& path);

/// Completed a -> b upcrossings counted by the alternating stopping-time
/// ladder (two-state scan: seek value <= a, then value >= b).
std::size_t upcrossings(const Path& path, double a, double b);

/// Closed interval used by first-entry rules.
struct ValueInterval {
    double lo;
    double hi;
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
};

/// Stopping rule decidable from the path prefix alone: first entry into a
/// set of intervals, a fixed time, or min/max compositions of rules.
class StoppingRule {
public:
    static StoppingRule first_entry(std::vector<ValueInterval> target);
    static StoppingRule fixed_time(std::size_t n);
    static StoppingRule min_of(StoppingRule a, StoppingRule b);
    static StoppingRule max_of(StoppingRule a, StoppingRule b);

    /// True iff the rule fires at step n of the given prefix (values up to
    /// and including index n). Uses no information beyond index n.
    bool fires_at(PathView prefix, std::size_t n) const;

private:
    struct Node;
    std::shared_ptr<const Node> node_;
};

/// Smallest index at which the rule fires, or nullopt if it never does on
/// this finite path.
std::optional<std::size_t> stopping_time(const StoppingRule& rule, const Path& path);

/// Both sides of a maximal inequality, estimated on the same ensemble.
/// Callers assert lhs.mean <= rhs.mean + slack.
struct MaximalAudit {
    McEstimate lhs;
    McEstimate rhs;
};

/// Without p: lhs = P[max_m X_m^+ >= lambda], rhs = E[X_n^+] / lambda.
/// With p > 1: lhs = E[(max_m X_m^+)^p], rhs = (p/(p-1))^p E[(X_n^+)^p].
MaximalAudit maximal_inequality_audit(const std::vector<Path>& paths, double lambda,
                                      std::optional<double> p = std::nullopt);

} // namespace stoklab
