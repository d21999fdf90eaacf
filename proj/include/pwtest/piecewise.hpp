#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pwtest/base_class.hpp"

namespace pwtest {

/// Any target x -> f(x) handed to an oracle or a ground-truth routine.
using Target = std::function<double(double)>;

/// f(x) = h_i(x) for the i with t_{i-1} < x <= t_i, where t_0 = -inf and
/// t_k = +inf. Each piece owns its right endpoint.
class PiecewiseFunction {
public:
    /// Throws std::invalid_argument unless pieces.size() == breakpoints.size() + 1,
    /// the breakpoints are finite and nondecreasing, and every piece has a
    /// well-formed descriptor.
    PiecewiseFunction(std::vector<double> breakpoints, std::vector<Member> pieces);

    double operator()(double x) const noexcept { return pieces_[piece_index(x)](x); }

    /// Index i of the piece owning x.
    std::size_t piece_index(double x) const noexcept;

    std::size_t piece_count() const noexcept { return pieces_.size(); }
    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const Member> pieces() const noexcept { return pieces_; }

    Target as_target() const;

private:
    std::vector<double> breakpoints_;
    std::vector<Member> pieces_;
};

} // namespace pwtest
