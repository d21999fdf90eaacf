#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pwtest/base_class.hpp"
#include "pwtest/piecewise.hpp"

namespace pwtest {

/// Step function on [0,1]: value values[i] on (t_i, t_{i+1}] with t_0 = 0
/// and t_n = 1 (the same right-closed convention as PiecewiseFunction).
class StepFunction {
public:
    /// Throws std::invalid_argument unless values.size() == breakpoints.size() + 1
    /// and the breakpoints are nondecreasing within [0, 1].
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    double operator()(double x) const noexcept;

    std::span<const double> breakpoints() const noexcept { return breakpoints_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t piece_count() const noexcept { return values_.size(); }

    /// Same function with zero-length pieces dropped and equal neighbours
    /// merged.
    StepFunction normalized() const;

    /// Lengths of the pieces under the uniform measure on [0,1].
    std::vector<double> masses() const;

    PiecewiseFunction to_piecewise() const;
    Target as_target() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

enum class DistanceMethod { DpExact, GridApprox, Exhaustive };

std::string_view to_string(DistanceMethod m) noexcept;
std::optional<DistanceMethod> parse_distance_method(std::string_view s) noexcept;

struct DistanceCertificate {
    std::string instance_id;
    int k = 0;
    double distance = 0.0;
    DistanceMethod method = DistanceMethod::DpExact;
    std::optional<std::size_t> grid_size;
};

/// Least total weight that must be relabelled so the labelled sequence
/// splits into at most k runs of one label each. Exact in the weight type.
/// Runs O(k n L) for n items and L distinct labels.
std::int64_t min_relabel_weight(std::span<const std::int64_t> weights, std::span<const int> labels,
                                int k);
double min_relabel_weight(std::span<const double> weights, std::span<const int> labels, int k);

/// Exact dist(f, F_k(constants)) under Uniform(0,1). Segment boundaries of
/// an optimal approximant may be taken at breakpoints of f, so the distance
/// is min_relabel_weight over f's pieces. Throws std::invalid_argument for
/// k < 1.
double dist_step_to_piecewise_const(const StepFunction& f, int k);

/// Distance on the grid of midpoints (g + 0.5) / grid_size: the least
/// fraction of grid points on which every g in F_k(H) must disagree with f.
///
/// Per segment the best agreement count is exact on the grid: polynomial
/// members matching more than p + 1 grid points are enumerated explicitly
/// (every such member is fixed by the first p + 1 points it matches);
/// shifted sines try both phases through every grid point. The polynomial
/// enumeration costs O(grid_size^(p+1) log grid_size), so large grids are
/// practical for p <= 1.
///
/// Throws std::invalid_argument unless k >= 1 and grid_size >= 4 k.
double dist_grid_general(const Target& f, const BaseClass& h, int k, std::size_t grid_size = 4096);

} // namespace pwtest
