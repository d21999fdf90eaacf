#pragma once

#include <cmath>

namespace pwtest {

/// An observation (x, f(x)); x lies in [0, 1] for every target in this
/// library.
struct ValuePoint {
    double x = 0.0;
    double y = 0.0;
};

/// Equality predicate on the value space. Real-valued targets are evaluated
/// in floating point, so values compare equal within
/// abs_tol + rel_tol * max(|a|, |b|). Discrete value sets use exact().
struct ValueEquality {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;

    static constexpr ValueEquality exact() noexcept { return {0.0, 0.0}; }

    friend bool operator==(const ValueEquality&, const ValueEquality&) = default;

    bool operator()(double a, double b) const noexcept {
        if (a == b) {
            return true;
        }
        return std::abs(a - b) <= abs_tol + rel_tol * std::fmax(std::abs(a), std::abs(b));
    }
};

} // namespace pwtest
