#include "pwtest/oracle.hpp"

#include <string>

namespace pwtest {

TargetOracle::TargetOracle(Target target, std::size_t sample_budget, std::size_t query_budget,
                           std::uint64_t seed)
    : target_(std::move(target)), sample_budget_(sample_budget), query_budget_(query_budget),
      rng_(seed) {
    if (!target_) {
        throw std::invalid_argument("oracle needs a target function");
    }
}

std::span<const double> TargetOracle::draw(std::size_t n) {
    if (n > sample_budget_ - samples_.size()) {
        throw BudgetExceeded("sample budget " + std::to_string(sample_budget_) + " exceeded");
    }
    const std::size_t old = samples_.size();
    samples_.resize(old + n);
    rng_.fill_uniform(std::span<double>(samples_).subspan(old));
    return std::span<const double>(samples_).subspan(old);
}

double TargetOracle::query(std::size_t index) {
    if (index >= samples_.size()) {
        throw std::out_of_range("query on a point that was never drawn");
    }
    ++query_calls_;
    if (auto it = labels_.find(index); it != labels_.end()) {
        return it->second;
    }
    if (labels_.size() >= query_budget_) {
        --query_calls_;
        throw BudgetExceeded("query budget " + std::to_string(query_budget_) + " exceeded");
    }
    const double y = target_(samples_[index]);
    labels_.emplace(index, y);
    return y;
}

void TargetOracle::query_all() {
    labels_.reserve(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        query(i);
    }
}

} // namespace pwtest
