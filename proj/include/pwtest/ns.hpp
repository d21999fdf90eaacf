#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pwtest/base_class.hpp"
#include "pwtest/oracle.hpp"
#include "pwtest/params.hpp"
#include "pwtest/piecewise.hpp"
#include "pwtest/report.hpp"

namespace pwtest {

struct NsEstimate {
    double value = 0.0;
    double std_error = 0.0;
    /// Anchors (or pairs) the value averages over.
    std::size_t used = 0;
};

/// Monte-Carlo ground truth of NS_delta(f; H): anchors x ~ Uniform(0,1),
/// neighbours x' ~ Uniform(x - delta, x + delta) (not clipped; targets are
/// defined on the whole line). Each anchor contributes the anchored minimum
/// disagreement rate over `inner_probes` neighbours; for constants the
/// minimum is the single indicator 1[f(x') != f(x)], so one neighbour is
/// drawn per anchor regardless of `inner_probes`.
NsEstimate ns_true_mc(const Target& f, const BaseClass& h, double delta, std::size_t anchors,
                      std::uint64_t seed, std::size_t inner_probes = 64);

/// Per-anchor record of the general estimator.
struct AnchorTrace {
    /// Pool index of the anchor (< m).
    std::size_t anchor = 0;
    /// Pool indices of the neighbours, strictly increasing, all >= m.
    std::vector<std::size_t> neighbors;
    /// Anchored minimum disagreement count; ell + 1 when no member of H
    /// passes through the anchor.
    std::size_t mismatches = 0;
    bool complete = false;
};

struct GeneralEstimate {
    NsEstimate estimate;
    std::optional<FailureEvent> failure;
    std::vector<AnchorTrace> anchors;
};

/// The general estimator. Draws the full pool of s points; the first m are
/// anchors; each anchor's neighbours are the first ell later pool points
/// (scanning from index m) inside the open window (x_i - delta, x_i + delta).
/// Anchor i contributes min-disagreements / ell, or 1 when the anchored set
/// is empty. If some anchor finds fewer than ell neighbours the failure is
/// recorded and the value averages the complete anchors only.
///
/// When q > s every pool point is labelled up front.
GeneralEstimate ns_hat_general(TargetOracle& oracle, const BaseClass& h, const ActiveParams& params);

enum class LabelMode { Active, Passive };

/// One selected close pair of the pairing estimator.
struct PairTrace {
    std::size_t block = 0;
    std::size_t left = 0;  ///< pool index of z_r
    std::size_t right = 0; ///< pool index of y_r
};

struct PairsEstimate {
    NsEstimate estimate;
    std::optional<FailureEvent> failure;
    std::vector<PairTrace> pairs;
};

/// Within pool[first, first + n): the smallest i with delta < z_i < 1 - delta
/// that has a later partner j with |z_i - z_j| < delta, and the smallest
/// such j. nullopt if the block has no qualifying pair.
std::optional<PairTrace> find_block_pair(std::span<const double> pool, std::size_t first,
                                         std::size_t n, double delta);

/// The pairing estimator for piecewise constants. Draws s' pool points, cuts
/// them into s'/n consecutive blocks of n, takes the first pair of each of
/// the first m' blocks holding a qualifying pair, and returns
/// ((1 - 2 delta) / m') * #{r : f(z_r) != f(y_r)}. Active mode labels only
/// the 2 m' pair points; passive mode labels the whole pool. With fewer than
/// m' qualifying blocks the failure is recorded and the value is scaled by
/// the number of pairs found instead.
PairsEstimate ns_hat_pairs(TargetOracle& oracle, const ConstantParams& params, LabelMode mode,
                           ValueEquality eq = {});

} // namespace pwtest
