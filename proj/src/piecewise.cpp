#include "pwtest/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace pwtest {

PiecewiseFunction::PiecewiseFunction(std::vector<double> breakpoints, std::vector<Member> pieces)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
    if (pieces_.size() != breakpoints_.size() + 1) {
        throw std::invalid_argument("piecewise function needs exactly one more piece than breakpoints");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!std::isfinite(breakpoints_[i]) || (i > 0 && breakpoints_[i] < breakpoints_[i - 1])) {
            throw std::invalid_argument("breakpoints must be finite and nondecreasing");
        }
    }
    for (const Member& m : pieces_) {
        const bool ok = m.kind == BaseKind::Polynomial ? !m.params.empty() : m.params.size() == 1;
        if (!ok) {
            throw std::invalid_argument("malformed piece descriptor");
        }
    }
}

std::size_t PiecewiseFunction::piece_index(double x) const noexcept {
    // Number of breakpoints strictly below x.
    return static_cast<std::size_t>(
        std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

Target PiecewiseFunction::as_target() const {
    auto self = std::make_shared<const PiecewiseFunction>(*this);
    return [self](double x) { return (*self)(x); };
}

} // namespace pwtest
