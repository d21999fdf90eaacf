#include "pwtest/ns.hpp"

#include "pwtest/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace pwtest {

namespace {

// Mean and standard error of the mean, accumulated with Welford updates.
class MeanAccumulator {
public:
    void add(double v) {
        ++n_;
        const double d = v - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (v - mean_);
    }

    NsEstimate estimate() const {
        NsEstimate e;
        e.used = n_;
        e.value = mean_;
        if (n_ > 1) {
            e.std_error = std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
        }
        return e;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

} // namespace

NsEstimate ns_true_mc(const Target& f, const BaseClass& h, double delta, std::size_t anchors,
                      std::uint64_t seed, std::size_t inner_probes) {
    if (anchors == 0 || inner_probes == 0) {
        throw std::invalid_argument("ns_true_mc needs at least one anchor and one probe");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("delta must be positive");
    }
    Rng rng(seed);
    MeanAccumulator acc;
    if (h.kind() == BaseKind::Constants) {
        for (std::size_t a = 0; a < anchors; ++a) {
            const double x = rng.uniform();
            const double xp = rng.uniform(x - delta, x + delta);
            acc.add(h.equal(f(x), f(xp)) ? 0.0 : 1.0);
        }
        return acc.estimate();
    }
    std::vector<ValuePoint> probes(inner_probes);
    for (std::size_t a = 0; a < anchors; ++a) {
        const double x = rng.uniform();
        const ValuePoint anchor{x, f(x)};
        for (ValuePoint& p : probes) {
            p.x = rng.uniform(x - delta, x + delta);
            p.y = f(p.x);
        }
        const AnchoredFit fit = min_disagreements_anchored(h, anchor, probes);
        acc.add(fit.anchored_set_empty()
                    ? 1.0
                    : static_cast<double>(fit.count) / static_cast<double>(inner_probes));
    }
    return acc.estimate();
}

GeneralEstimate ns_hat_general(TargetOracle& oracle, const BaseClass& h, const ActiveParams& params) {
    const std::span<const double> pool = oracle.draw(params.s);
    if (params.q > params.s) {
        oracle.query_all();
    }
    GeneralEstimate out;
    out.anchors.resize(params.m);
    MeanAccumulator acc;
    std::vector<ValuePoint> probes(params.ell);
    for (std::size_t i = 0; i < params.m; ++i) {
        AnchorTrace& trace = out.anchors[i];
        trace.anchor = i;
        trace.neighbors.resize(params.ell);
        const double x = pool[i];
        const std::size_t found = kernels::find_in_window(pool, params.m, x - params.delta,
                                                          x + params.delta, trace.neighbors);
        trace.neighbors.resize(found);
        if (found < params.ell) {
            out.failure = FailureEvent::NeighborPoolExhausted;
            continue;
        }
        trace.complete = true;
        const ValuePoint anchor{x, oracle.query(i)};
        for (std::size_t j = 0; j < params.ell; ++j) {
            const std::size_t t = trace.neighbors[j];
            probes[j] = {pool[t], oracle.query(t)};
        }
        const AnchoredFit fit = min_disagreements_anchored(h, anchor, probes);
        if (fit.anchored_set_empty()) {
            trace.mismatches = params.ell + 1;
            acc.add(1.0);
        } else {
            trace.mismatches = fit.count;
            acc.add(static_cast<double>(fit.count) / static_cast<double>(params.ell));
        }
    }
    out.estimate = acc.estimate();
    return out;
}

std::optional<PairTrace> find_block_pair(std::span<const double> pool, std::size_t first,
                                         std::size_t n, double delta) {
    const std::size_t end = first + n;
    if (end > pool.size()) {
        throw std::out_of_range("block extends past the pool");
    }
    const std::span<const double> block = pool.first(end);
    for (std::size_t i = first; i < end; ++i) {
        const double z = block[i];
        if (!(z > delta && z < 1.0 - delta)) {
            continue;
        }
        // The window test can differ from |z - z_j| < delta by an ulp at
        // the edges; confirm each hit exactly and keep scanning on a miss.
        for (std::size_t from = i + 1; from < end;) {
            std::size_t j = 0;
            if (kernels::find_in_window(block, from, z - delta, z + delta, {&j, 1}) == 0) {
                break;
            }
            if (std::abs(z - block[j]) < delta) {
                return PairTrace{first / std::max<std::size_t>(n, 1), i, j};
            }
            from = j + 1;
        }
    }
    return std::nullopt;
}

PairsEstimate ns_hat_pairs(TargetOracle& oracle, const ConstantParams& params, LabelMode mode,
                           ValueEquality eq) {
    const std::span<const double> pool = oracle.draw(params.s_prime);
    if (mode == LabelMode::Passive) {
        oracle.query_all();
    }
    PairsEstimate out;
    out.pairs.reserve(params.m_prime);
    std::size_t mismatches = 0;
    const std::size_t blocks = params.blocks();
    for (std::size_t b = 0; b < blocks && out.pairs.size() < params.m_prime; ++b) {
        const auto pair = find_block_pair(pool, b * params.n, params.n, params.delta);
        if (!pair) {
            continue;
        }
        out.pairs.push_back(*pair);
        if (!eq(oracle.query(pair->left), oracle.query(pair->right))) {
            ++mismatches;
        }
    }
    const std::size_t used = out.pairs.size();
    if (used < params.m_prime) {
        out.failure = FailureEvent::InsufficientPairs;
    }
    out.estimate.used = used;
    if (used > 0) {
        const double scale = 1.0 - 2.0 * params.delta;
        const double rate = static_cast<double>(mismatches) / static_cast<double>(used);
        out.estimate.value = scale * rate;
        out.estimate.std_error = scale * std::sqrt(rate * (1.0 - rate) / static_cast<double>(used));
    }
    return out;
}

} // namespace pwtest
