#pragma once

#include <stdexcept>
#include <string>

namespace stoklab {

/// Raised when a computation would exceed a hard resource bound
/// (population caps, DP table sizes, tree depths).
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a simulated state becomes non-finite or leaves the
/// admissible range; carries the time at which the path blew up.
class ExplosionError : public std::runtime_error {
public:
    ExplosionError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Raised by the boundary-value solver when the cell Peclet condition
/// |f| h <= g^2 fails; carries the grid size that would satisfy it.
class PecletError : public std::invalid_argument {
public:
    PecletError(const std::string& what, int required_n)
        : std::invalid_argument(what), required_n_(required_n) {}
    int required_n() const noexcept { return required_n_; }

private:
    int required_n_;
};

/// Raised when a linear solve encounters a singular or non-finite system.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stoklab
