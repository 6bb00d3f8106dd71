#include "stoklab/martingale.hpp"

#include <cmath>
#include <stdexcept>

namespace stoklab {

namespace {

void require_same_grid(const Path& a, const Path& b, const char* who) {
    if (a.times.size() != b.times.size())
        throw std::invalid_argument(std::string(who) + ": grid length mismatch");
    for (std::size_t i = 0; i < a.times.size(); ++i)
        if (a.times[i] != b.times[i])
            throw std::invalid_argument(std::string(who) + ": grids differ");
}

std::size_t state_at(const Path& path, std::size_t k, const FiniteChain& chain,
                     const char* who) {
    const double v = path.values[k];
    const double r = std::round(v);
    if (std::fabs(v - r) > 1e-9 || r < 0.0 || r >= static_cast<double>(chain.n_states()))
        throw std::invalid_argument(std::string(who) + ": path value is not a chain state");
    return static_cast<std::size_t>(r);
}

} // namespace

Path predictable_transform(const Path& weights, const Path& path) {
    require_same_grid(weights, path, "predictable_transform");
    Path out;
    out.times = path.times;
    out.values.resize(path.size());
    double acc = 0.0;
    out.values[0] = 0.0;
    for (std::size_t m = 1; m < path.size(); ++m) {
        acc += weights.values[m] * (path.values[m] - path.values[m - 1]);
        out.values[m] = acc;
    }
    return out;
}

DoobDecomposition doob_decomposition_chain(const FiniteChain& chain,
                                           const std::function<double(std::size_t)>& f,
                                           const Path& path) {
    DoobDecomposition d;
    d.predictable_part.times = path.times;
    d.martingale_part.times = path.times;
    d.predictable_part.values.resize(path.size());
    d.martingale_part.values.resize(path.size());

    double a = 0.0;
    std::size_t prev = state_at(path, 0, chain, "doob_decomposition_chain");
    d.predictable_part.values[0] = 0.0;
    d.martingale_part.values[0] = f(prev);
    for (std::size_t n = 1; n < path.size(); ++n) {
        const std::size_t cur = state_at(path, n, chain, "doob_decomposition_chain");
        if (chain.prob(prev, cur) <= 0.0)
            throw std::invalid_argument(
                "doob_decomposition_chain: transition has zero probability under the chain");
        a += chain.conditional_mean(prev, f) - f(prev);
        d.predictable_part.values[n] = a;
        d.martingale_part.values[n] = f(cur) - a;
        prev = cur;
    }
    return d;
}

Path bracket_process_chain(const FiniteChain& chain,
                           const std::function<double(std::size_t)>& f, const Path& path) {
    Path out;
    out.times = path.times;
    out.values.resize(path.size());
    out.values[0] = 0.0;
    double acc = 0.0;
    std::size_t prev = state_at(path, 0, chain, "bracket_process_chain");
    for (std::size_t n = 1; n < path.size(); ++n) {
        const std::size_t cur = state_at(path, n, chain, "bracket_process_chain");
        if (chain.prob(prev, cur) <= 0.0)
            throw std::invalid_argument(
                "bracket_process_chain: transition has zero probability under the chain");
        const double fi = f(prev);
        double inc = 0.0;
        for (std::size_t j = 0; j < chain.n_states(); ++j) {
            const double pj = chain.prob(prev, j);
            if (pj > 0.0) {
                const double d = f(j) - fi;
                inc += pj * d * d;
            }
        }
        acc += inc;
        out.values[n] = acc;
        prev = cur;
    }
    return out;
}

std::size_t upcrossings(const Path& path, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("upcrossings: need a < b");
    std::size_t count = 0;
    bool armed = false; // true once the path has visited (-inf, a]
    for (double v : path.values) {
        if (!armed) {
            if (v <= a) armed = true;
        } else if (v >= b) {
            ++count;
            armed = false;
        }
    }
    return count;
}

struct StoppingRule::Node {
    enum class Kind { FirstEntry, FixedTime, Min, Max } kind;
    std::vector<ValueInterval> target;
    std::size_t time = 0;
    std::shared_ptr<const Node> left, right;

    // "fired at or before n" is the monotone primitive; composition with
    // min/max preserves non-anticipation.
    bool fired_by(PathView prefix, std::size_t n) const {
        switch (kind) {
            case Kind::FirstEntry:
                for (std::size_t k = 0; k <= n; ++k)
                    for (const auto& iv : target)
                        if (iv.contains(prefix.values[k])) return true;
                return false;
            case Kind::FixedTime:
                return n >= time;
            case Kind::Min:
                return left->fired_by(prefix, n) || right->fired_by(prefix, n);
            case Kind::Max:
                return left->fired_by(prefix, n) && right->fired_by(prefix, n);
        }
        return false;
    }
};

StoppingRule StoppingRule::first_entry(std::vector<ValueInterval> target) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::FirstEntry;
    n->target = std::move(target);
    StoppingRule r;
    r.node_ = std::move(n);
    return r;
}

StoppingRule StoppingRule::fixed_time(std::size_t t) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::FixedTime;
    n->time = t;
    StoppingRule r;
    r.node_ = std::move(n);
    return r;
}

StoppingRule StoppingRule::min_of(StoppingRule a, StoppingRule b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Min;
    n->left = a.node_;
    n->right = b.node_;
    StoppingRule r;
    r.node_ = std::move(n);
    return r;
}

StoppingRule StoppingRule::max_of(StoppingRule a, StoppingRule b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Max;
    n->left = a.node_;
    n->right = b.node_;
    StoppingRule r;
    r.node_ = std::move(n);
    return r;
}

bool StoppingRule::fires_at(PathView prefix, std::size_t n) const {
    if (n >= prefix.size())
        throw std::invalid_argument("StoppingRule::fires_at: index beyond prefix");
    if (!node_) throw std::invalid_argument("StoppingRule: empty rule");
    if (!node_->fired_by(prefix, n)) return false;
    return n == 0 || !node_->fired_by(prefix, n - 1);
}

std::optional<std::size_t> stopping_time(const StoppingRule& rule, const Path& path) {
    const PathView v = view_of(path);
    for (std::size_t n = 0; n < path.size(); ++n)
        if (rule.fires_at(v, n)) return n;
    return std::nullopt;
}

MaximalAudit maximal_inequality_audit(const std::vector<Path>& paths, double lambda,
                                      std::optional<double> p) {
    if (paths.empty()) throw std::invalid_argument("maximal_inequality_audit: no paths");
    if (!(lambda > 0.0)) throw std::invalid_argument("maximal_inequality_audit: lambda > 0");
    if (p && !(*p > 1.0)) throw std::invalid_argument("maximal_inequality_audit: p > 1");

    OnlineStats lhs, rhs;
    for (const Path& path : paths) {
        double running_max = 0.0;
        for (double v : path.values) running_max = std::max(running_max, v);
        const double terminal_pos = std::max(path.values.back(), 0.0);
        if (p) {
            const double factor = std::pow(*p / (*p - 1.0), *p);
            lhs.add(std::pow(running_max, *p));
            rhs.add(factor * std::pow(terminal_pos, *p));
        } else {
            lhs.add(running_max >= lambda ? 1.0 : 0.0);
            rhs.add(terminal_pos / lambda);
        }
    }
    return MaximalAudit{lhs.estimate(), rhs.estimate()};
}

} // namespace stoklab
