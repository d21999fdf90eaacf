#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pwtest/piecewise.hpp"
#include "pwtest/rng.hpp"

namespace pwtest {

/// Thrown when a tester asks for more samples or labels than it declared.
/// This signals a configuration bug, never a test outcome.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Active-testing access to a hidden target: unlabeled Uniform(0,1) samples
/// are drawn from a seeded stream, and labels may be requested only for
/// samples already drawn. Both budgets are hard limits.
///
/// A label requested twice for the same sample is charged once; the
/// per-use count is kept separately in query_calls().
///
/// Single owner: one oracle per trial.
class TargetOracle {
public:
    TargetOracle(Target target, std::size_t sample_budget, std::size_t query_budget,
                 std::uint64_t seed);

    TargetOracle(const TargetOracle&) = delete;
    TargetOracle& operator=(const TargetOracle&) = delete;
    TargetOracle(TargetOracle&&) = default;
    TargetOracle& operator=(TargetOracle&&) = default;

    /// Draws n more samples and returns them.
    std::span<const double> draw(std::size_t n);

    /// Every sample drawn so far, in draw order.
    std::span<const double> samples() const noexcept { return samples_; }

    /// Label of sample `index`.
    double query(std::size_t index);

    /// Labels every sample drawn so far (the passive protocol).
    void query_all();

    std::size_t sample_budget() const noexcept { return sample_budget_; }
    std::size_t query_budget() const noexcept { return query_budget_; }
    std::size_t samples_drawn() const noexcept { return samples_.size(); }
    std::size_t queries_made() const noexcept { return labels_.size(); }
    std::size_t query_calls() const noexcept { return query_calls_; }

private:
    Target target_;
    std::size_t sample_budget_;
    std::size_t query_budget_;
    Rng rng_;
    std::vector<double> samples_;
    std::unordered_map<std::size_t, double> labels_;
    std::size_t query_calls_ = 0;
};

} // namespace pwtest
