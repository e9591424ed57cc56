#pragma once

#include <stdexcept>
#include <string>

namespace tfspec {

// Ratio of a decaying Airy solution evaluated at (or numerically at) a zero
// of Ai; the logarithmic derivative is undefined there.
class singular_ratio_error : public std::runtime_error {
public:
    explicit singular_ratio_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A linear system came out numerically singular (e.g. the inner coupled
// system evaluated exactly at a discrete resonance).
class near_singular_error : public std::runtime_error {
public:
    near_singular_error(const std::string& msg, double condition_estimate)
        : std::runtime_error(msg), condition_estimate(condition_estimate) {}
    double condition_estimate;
};

// Grid too coarse for the requested potential: the turning-point layer of
// width ~ eps^(2/3) would be unresolved and the answer silently wrong.
class resolution_error : public std::runtime_error {
public:
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A bracketed search exhausted its admissible window without finding a root.
class not_found_error : public std::runtime_error {
public:
    explicit not_found_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative method failed to converge within its iteration budget.
class iteration_error : public std::runtime_error {
public:
    explicit iteration_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Not enough usable data points for a least-squares fit.
class fit_error : public std::runtime_error {
public:
    explicit fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tfspec
